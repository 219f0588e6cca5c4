//! Representations of bound quivers and the basic operations on them.

mod cover;
mod decompose;
mod enumerate;
mod hom;
mod iso;
mod rep;

pub use cover::{from_projective, projective_cover, radical_basis, socle_dims, syzygy, top_dims};
pub use decompose::{decompose, indecomposable, split_once, Certainty, Decomposition, Split, Summand};
pub use enumerate::{enumerate_indecomposables, standard_name, Enumeration};
pub use hom::{combine, hom_basis, hom_dim};
pub use iso::{hom_profile, is_isomorphic, isomorphic, IsoVerdict};
pub use rep::{induced_on_cokernels, kernel_cokernel, KernelCokernel, Morphism, Representation};

use crate::ffld::Field;
use crate::report::{CheckReport, Verdict, Witness};

/// Visits one representative of every line in `F_p^h` (first nonzero
/// coordinate equal to 1). Stops early when `visit` returns `false`.
pub(crate) fn for_each_point(k: Field, h: usize, mut visit: impl FnMut(&[u32]) -> bool) {
    let p = k.p();
    let mut c = vec![0u32; h];
    for lead in 0..h {
        // Coordinates before `lead` are zero, `lead` is 1, the rest are free.
        c.iter_mut().for_each(|x| *x = 0);
        c[lead] = 1;
        loop {
            if !visit(&c) {
                return;
            }
            let mut i = lead + 1;
            while i < h {
                c[i] += 1;
                if c[i] < p {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
            if i == h {
                break;
            }
        }
    }
}

/// Checks every relation on `r`; the first failing one is the witness.
pub fn validate_rep(r: &Representation) -> CheckReport {
    let mut rep = CheckReport::new("validate_rep");
    match r.relation_violation() {
        None => rep.claim("relations vanish", Verdict::Pass, ""),
        Some(rel) => {
            rep.claim("relations vanish", Verdict::Fail, &rel);
            rep.witness(Witness::RelationViolation {
                module: r.clone(),
                relation: rel,
            });
        }
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::ffld::Mat;
    use crate::limits::Limits;
    use crate::quivalg::projective;

    #[test]
    fn points_cover_every_line_once() {
        let k = Field::new(3).unwrap();
        let mut seen = Vec::new();
        for_each_point(k, 3, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(seen.len(), (27 - 1) / 2);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 13);
        let mut none = 0;
        for_each_point(k, 0, |_| {
            none += 1;
            true
        });
        assert_eq!(none, 0);
    }

    #[test]
    fn validate_examples() {
        let lim = Limits::default();
        let a2 = builtin::a2(Field::default(), &lim).unwrap();
        assert_eq!(validate_rep(&projective(&a2, 0)).verdict, Verdict::Pass);
        assert_eq!(validate_rep(&Representation::zero(&a2)).verdict, Verdict::Pass);

        let lam = builtin::lambda(Field::default(), &lim).unwrap();
        let k = Field::default();
        // All four spaces one-dimensional, every arrow 1 except c2 = 0: the
        // square does not commute.
        let q = lam.quiver();
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let v = u32::from(a.name != "c2");
                Mat::from_fn(k, 1, 1, |_, _| v)
            })
            .collect();
        let r = Representation::new(lam.clone(), vec![1, 1, 1, 1], maps).unwrap();
        let rep = validate_rep(&r);
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(!rep.witnesses.is_empty());
    }
}
