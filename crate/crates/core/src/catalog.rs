// SPDX-License-Identifier: Apache-2.0

//! Named type functions and their worked normal forms.

use crate::error::Result;
use crate::normalform::NormalForm;
use crate::typeterm::TypeFunction;

/// Two nonsignalling channels `2 → 1` and `4 → 3`.
pub const NS: &str = "(A2 -> A1) * (A4 -> A3)";
/// Bipartite process matrices.
pub const PM: &str = "~((A1 -> A2) * (A3 -> A4))";
/// Nonsignalling channels `2 → 3`, `4 → 1`; lies just above [`PM`].
pub const NS_TILDE: &str = "(A2 -> A3) * (A4 -> A1)";
/// Process matrices with global past 5 and global future 6.
pub const PM_PAST_FUTURE: &str = "~((A1 -> A2) * (A3 -> A4) * A5 * ~A6)";
/// Adapters between bipartite process matrices, `(g ⊗ g*)*`.
pub const ADAPTER_PM: &str = "~(~((A1 -> A2) * (A3 -> A4)) * (A5 -> A6) * (A7 -> A8))";
/// Adapters between process matrices with global past and future.
pub const ADAPTER_PF: &str =
    "~(~((A1 -> A2) * (A3 -> A4) * A5 * ~A6) * (A7 -> A8) * (A9 -> A10) * A11 * ~A12)";

pub fn ns() -> TypeFunction {
    TypeFunction::parse(NS).expect("catalog term")
}

pub fn pm() -> TypeFunction {
    TypeFunction::parse(PM).expect("catalog term")
}

pub fn ns_tilde() -> TypeFunction {
    TypeFunction::parse(NS_TILDE).expect("catalog term")
}

pub fn pm_past_future() -> TypeFunction {
    TypeFunction::parse(PM_PAST_FUTURE).expect("catalog term")
}

pub fn adapter_pm() -> TypeFunction {
    TypeFunction::parse(ADAPTER_PM).expect("catalog term")
}

pub fn adapter_pf() -> TypeFunction {
    TypeFunction::parse(ADAPTER_PF).expect("catalog term")
}

/// A hand-written normal form together with the function it should equal.
pub struct WorkedForm {
    pub name: &'static str,
    pub target: TypeFunction,
    pub form: NormalForm,
}

fn form(n: usize, leaves: &[&str], terms: &[&[usize]]) -> Result<NormalForm> {
    NormalForm::from_labels(n, leaves, terms.iter().map(|t| t.to_vec()).collect())
}

const H: [&str; 6] = [
    "∅-2-6-5-8-7-1-4-3",
    "∅-2-8-7-6-5-1-4-3",
    "∅-2-1-4-6-5-8-7-3",
    "∅-4-6-5-8-7-3-2-1",
    "∅-4-8-7-6-5-3-2-1",
    "∅-4-3-2-6-5-8-7-1",
];

const G: [&str; 6] = [
    "∅-12-6-2-1-4-3-5-8-7-10-9-11",
    "∅-12-6-4-3-2-1-5-8-7-10-9-11",
    "∅-12-8-7-10-9-6-2-1-4-3-5-11",
    "∅-12-8-7-10-9-6-4-3-2-1-5-11",
    "∅-12-10-9-8-7-6-2-1-4-3-5-11",
    "∅-12-10-9-8-7-6-4-3-2-1-5-11",
];

/// The worked normal forms for the examples above, in a fixed order.
pub fn worked_forms() -> Result<Vec<WorkedForm>> {
    Ok(vec![
        WorkedForm { name: "ns", target: ns(), form: form(4, &["∅-1-2-3-4", "∅-3-4-1-2"], &[&[0, 1]])? },
        WorkedForm { name: "pm", target: pm(), form: form(4, &["2-1-4", "4-3-2"], &[&[0], &[1]])? },
        WorkedForm {
            name: "pm-past-future",
            target: pm_past_future(),
            form: form(6, &["∅-6-2-1-4-3-5", "∅-6-4-3-2-1-5"], &[&[0], &[1]])?,
        },
        // rows pair h_{1,j} with h_{2,j}
        WorkedForm { name: "adapter-pm", target: adapter_pm(), form: form(8, &H, &[&[0, 3], &[1, 4], &[2, 5]])? },
        WorkedForm { name: "adapter-pf", target: adapter_pf(), form: form(12, &G, &[&[0, 1], &[2, 3], &[4, 5]])? },
        WorkedForm {
            name: "adapter-pf-short",
            target: adapter_pf(),
            form: form(
                12,
                &[
                    G[0],
                    G[1],
                    "∅-12-8-7-10-9-{1,6}-4-3-{2,5}-11",
                    "∅-12-10-9-8-7-{1,6}-4-3-{2,5}-11",
                ],
                &[&[0, 1], &[2], &[3]],
            )?,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{BoolFn, Permutation, Subset};
    use crate::poset::StructurePoset;

    #[test]
    fn past_future_matches_causal_construction() {
        let past = BoolFn::basis(1, Subset::singleton(1)).unwrap();
        let h = BoolFn::one(1).unwrap().causal(&pm().function().causal(&past).unwrap()).unwrap();
        // block order future, pm, past becomes 1..4 = pm, 5 = past, 6 = future
        let k = h.permute(&Permutation::from_images(&[2, 3, 4, 5, 6, 1]).unwrap()).unwrap();
        assert_eq!(&k, pm_past_future().function());
        let p = StructurePoset::new(&k);
        let traces: Vec<Vec<Subset>> = p.maximal_chains(true).iter().map(|c| p.chain_labels(c)).collect();
        let s = |i: &[usize]| Subset::from_indices(6, i).unwrap();
        assert!(traces.contains(&vec![Subset::EMPTY, s(&[6]), s(&[2]), s(&[1]), s(&[5])]));
        assert!(traces.contains(&vec![Subset::EMPTY, s(&[6]), s(&[4]), s(&[3]), s(&[5])]));
    }

    #[test]
    fn adapter_inputs() {
        assert_eq!(adapter_pm().function().io_split().inputs.to_vec(), vec![1, 3, 6, 8]);
        assert_eq!(adapter_pf().function().io_split().inputs.to_vec(), vec![1, 3, 6, 8, 10, 11]);
    }
}
