use proptest::prelude::*;

use hotkit::boolfn::{BitString, BoolFn, Permutation};
use hotkit::mobius::{self, MobiusCoeffs};
use hotkit::normalform::{self, NormalForm};
use hotkit::subtypes::is_monotone_subtype;
use hotkit::typeterm::{self, ChainSpec, TypeFunction, TypeTerm};
use hotkit::LabelChain;

/// Any function with `f(θ) = 1` on up to 5 systems.
fn any_fn() -> impl Strategy<Value = BoolFn> {
    (1usize..=5).prop_flat_map(|n| {
        any::<u32>().prop_map(move |bits| BoolFn::from_fn(n, |s| s == 0 || bits >> s & 1 == 1).unwrap())
    })
}

fn type_of(n: usize) -> impl Strategy<Value = BoolFn> {
    let members = typeterm::enumerate_types(n).unwrap().members().to_vec();
    prop::sample::select(members)
}

fn any_type() -> impl Strategy<Value = BoolFn> {
    (1usize..=4).prop_flat_map(type_of)
}

/// Two types whose sizes add up to at most 5.
fn type_pair() -> impl Strategy<Value = (BoolFn, BoolFn)> {
    (1usize..=4).prop_flat_map(|a| (1usize..=5 - a).prop_flat_map(move |b| (type_of(a), type_of(b))))
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn complement_is_an_involution(f in any_fn()) {
        prop_assert_eq!(f.complement().complement(), f);
    }

    #[test]
    fn complement_swaps_meet_and_join(f in any_fn(), seed in any::<u32>()) {
        let g = BoolFn::from_fn(f.n(), |s| s == 0 || seed >> s & 1 == 1).unwrap();
        prop_assert_eq!(f.meet(&g).unwrap().complement(), f.complement().join(&g.complement()).unwrap());
        prop_assert!(f.meet(&g).unwrap().leq(&f));
        prop_assert!(f.leq(&f.join(&g).unwrap()));
    }

    #[test]
    fn mobius_round_trip(f in any_fn()) {
        let c = mobius::transform(&f);
        prop_assert_eq!(&c, &mobius::transform_direct(&f));
        prop_assert_eq!(mobius::inverse_to_fn(&c).unwrap(), f.clone());
        // f(s) is the sum of coefficients over subsets of the zeros of s
        for s in BitString::all(f.n()) {
            let zeros = !s.bits() & ((1u16 << f.n()) - 1);
            let sum: i64 = c.nonzero().iter().filter(|(t, _)| t.0 & !zeros == 0).map(|(_, v)| v).sum();
            prop_assert_eq!(sum, i64::from(f.get(s.bits())));
        }
    }

    #[test]
    fn mobius_text_and_json_round_trip(f in any_fn()) {
        let c = mobius::transform(&f);
        prop_assert_eq!(&MobiusCoeffs::parse(f.n(), &c.to_string()).unwrap(), &c);
        let json = serde_json::to_string(&c.to_json()).unwrap();
        prop_assert_eq!(MobiusCoeffs::from_json(&serde_json::from_str(&json).unwrap()).unwrap(), c);
        let json = serde_json::to_string(&f.to_json()).unwrap();
        prop_assert_eq!(BoolFn::from_json(&serde_json::from_str(&json).unwrap()).unwrap(), f);
    }

    #[test]
    fn permutation_commutes_with_mobius(f in any_fn(), images in any::<u64>()) {
        let n = f.n();
        let sigma = &Permutation::all(n)[images as usize % Permutation::all(n).len()];
        let p = f.permute(sigma).unwrap();
        prop_assert_eq!(mobius::transform(&p), mobius::transform(&f).permute(sigma).unwrap());
        prop_assert_eq!(p.permute(&sigma.inverse()).unwrap(), f);
    }

    #[test]
    fn products_commute_with_mobius((f, g) in type_pair()) {
        let (cf, cg) = (mobius::transform(&f), mobius::transform(&g));
        prop_assert_eq!(cf.tensor(&cg).unwrap(), mobius::transform(&f.tensor(&g).unwrap()));
        prop_assert_eq!(cf.causal(&cg).unwrap(), mobius::transform(&f.causal(&g).unwrap()));
        prop_assert_eq!(cf.complement(), mobius::transform(&f.complement()));
    }

    #[test]
    fn product_order((f, g) in type_pair()) {
        let t = f.tensor(&g).unwrap();
        let c = f.causal(&g).unwrap();
        let p = f.par(&g).unwrap();
        prop_assert!(t.leq(&c) && c.leq(&p));
        prop_assert_eq!(f.par(&g).unwrap(), f.complement().tensor(&g.complement()).unwrap().complement());
    }

    #[test]
    fn types_are_monotone_subtypes(f in any_type()) {
        prop_assert!(is_monotone_subtype(&f));
        let c = mobius::transform(&f);
        prop_assert!(c.max_abs() <= 1);
        prop_assert!(typeterm::is_type_function(&f.complement()).unwrap());
    }

    #[test]
    fn permuted_types_stay_types(f in (1usize..=4).prop_flat_map(|n| (type_of(n), perm(n)))) {
        let (f, sigma) = f;
        prop_assert!(typeterm::is_type_function(&f.permute(&sigma).unwrap()).unwrap());
    }

    #[test]
    fn witness_terms_round_trip(f in any_type()) {
        let tf = TypeFunction::from_fn(&f).unwrap();
        let text = tf.term().to_string();
        let back = TypeTerm::parse(&text).unwrap();
        prop_assert_eq!(back.eval(), f);
    }

    #[test]
    fn chain_specs_round_trip(n in 1usize..=4, k in any::<u64>()) {
        let chains = ChainSpec::enumerate(n);
        let c = &chains[k as usize % chains.len()];
        let f = c.chain_type().unwrap();
        prop_assert!(typeterm::is_chain_type(&f));
        let back = ChainSpec::from_coeffs(&mobius::transform(&f));
        prop_assert_eq!(back.as_ref(), Some(c));
        let lc = LabelChain::from_chain(c);
        prop_assert_eq!(&lc.to_chain(n).unwrap(), c);
        prop_assert_eq!(LabelChain::parse(&lc.to_string()).unwrap(), lc);
    }

    #[test]
    fn synthesized_forms_round_trip(f in any_type()) {
        let tf = TypeFunction::from_fn(&f).unwrap();
        let nf = normalform::synthesize(&tf).unwrap();
        prop_assert_eq!(nf.eval().unwrap(), f);
        let json = serde_json::to_string(&nf.to_json()).unwrap();
        let back = NormalForm::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back.eval().unwrap(), nf.eval().unwrap());
    }
}
