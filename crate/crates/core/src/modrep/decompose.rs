use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::limits::Limits;
use crate::modrep::{combine, for_each_point, hom_basis, is_isomorphic, kernel_cokernel, Morphism, Representation};

/// How sure we are that a module has no proper direct summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certainty {
    /// Every endomorphism was checked to be nilpotent or invertible.
    Certified,
    /// Only sampled endomorphisms were checked.
    Probable,
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub multiplicity: usize,
    pub certainty: Certainty,
}

#[derive(Clone, Debug, Default)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn certified(&self) -> bool {
        self.summands.iter().all(|s| s.certainty == Certainty::Certified)
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn len(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Summands repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Representation> {
        self.summands
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.module.clone(), s.multiplicity))
            .collect()
    }
}

pub enum Split {
    /// `M = A ⊕ B` with both nonzero.
    Proper(Representation, Representation),
    Indecomposable(Certainty),
}

fn fitting(phi: &Morphism, power: usize) -> Option<(Representation, Representation)> {
    let mut psi = phi.clone();
    for _ in 1..power {
        psi = psi.then(phi);
    }
    if psi.is_zero() || psi.is_iso() {
        return None;
    }
    let kc = kernel_cokernel(&psi);
    Some((kc.image, kc.kernel))
}

/// Looks for an endomorphism that is neither nilpotent nor invertible and
/// splits along its Fitting decomposition.
pub fn split_once(m: &Representation, limits: &Limits) -> Result<Split> {
    let basis = hom_basis(m, m)?;
    if basis.len() <= 1 {
        return Ok(Split::Indecomposable(Certainty::Certified));
    }
    let k = m.field();
    let p = k.p();
    let power = m.max_dim().max(1);
    let id = Morphism::identity(m);
    let h = basis.len();

    let try_phi = |phi: &Morphism| -> Option<(Representation, Representation)> {
        if let Some(s) = fitting(phi, power) {
            return Some(s);
        }
        for lam in 1..p {
            if let Some(s) = fitting(&phi.add(&id.scale(k.neg(lam))), power) {
                return Some(s);
            }
        }
        None
    };

    for f in &basis {
        if let Some((a, b)) = try_phi(f) {
            return Ok(Split::Proper(a, b));
        }
    }
    for i in 0..h {
        for j in i + 1..h {
            if let Some((a, b)) = try_phi(&basis[i].add(&basis[j])) {
                return Ok(Split::Proper(a, b));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed ^ h as u64);
    for _ in 0..limits.random_tries {
        let coeffs: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        if let Some((a, b)) = try_phi(&combine(&basis, &coeffs)) {
            return Ok(Split::Proper(a, b));
        }
    }
    if k.pow_count(h) > limits.guard {
        return Ok(Split::Indecomposable(Certainty::Probable));
    }
    let mut found = None;
    for_each_point(k, h, |c| {
        match fitting(&combine(&basis, c), power) {
            Some(s) => {
                found = Some(s);
                false
            }
            None => true,
        }
    });
    Ok(match found {
        Some((a, b)) => Split::Proper(a, b),
        None => Split::Indecomposable(Certainty::Certified),
    })
}

/// `Some(certainty)` if `M` is indecomposable, `None` if it splits.
pub fn indecomposable(m: &Representation, limits: &Limits) -> Result<Option<Certainty>> {
    if m.is_zero() {
        return Ok(None);
    }
    Ok(match split_once(m, limits)? {
        Split::Proper(..) => None,
        Split::Indecomposable(c) => Some(c),
    })
}

/// Krull–Schmidt decomposition with summands grouped up to isomorphism.
pub fn decompose(m: &Representation, limits: &Limits) -> Result<Decomposition> {
    let mut pending = vec![m.clone()];
    let mut pieces: Vec<(Representation, Certainty)> = Vec::new();
    while let Some(x) = pending.pop() {
        if x.is_zero() {
            continue;
        }
        match split_once(&x, limits)? {
            Split::Proper(a, b) => {
                // Keep discovery order stable: process `a` first.
                pending.push(b);
                pending.push(a);
            }
            Split::Indecomposable(c) => pieces.push((x, c)),
        }
    }
    let mut out = Decomposition::default();
    'piece: for (x, c) in pieces {
        for s in out.summands.iter_mut() {
            if is_isomorphic(&s.module, &x, limits)?.holds() {
                s.multiplicity += 1;
                if c == Certainty::Probable {
                    s.certainty = Certainty::Probable;
                }
                continue 'piece;
            }
        }
        out.summands.push(Summand {
            module: x,
            multiplicity: 1,
            certainty: c,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::ffld::Field;
    use crate::modrep::isomorphic;
    use crate::quivalg::{projective, regular_module, simple};

    #[test]
    fn p1_plus_s2() {
        let lim = Limits::default();
        let a2 = builtin::a2(Field::default(), &lim).unwrap();
        let (p1, s2) = (projective(&a2, 0), simple(&a2, 1));
        let m = Representation::direct_sum(&a2, &[p1.clone(), s2.clone()]);
        let d = decompose(&m, &lim).unwrap();
        assert_eq!(d.summands.len(), 2);
        assert!(d.certified());
        let mut found = [false, false];
        for s in &d.summands {
            assert_eq!(s.multiplicity, 1);
            if isomorphic(&s.module, &p1, &lim).unwrap() {
                found[0] = true;
            }
            if isomorphic(&s.module, &s2, &lim).unwrap() {
                found[1] = true;
            }
        }
        assert_eq!(found, [true, true]);
    }

    #[test]
    fn simple_cubed() {
        let lim = Limits::default();
        let a2 = builtin::a2(Field::default(), &lim).unwrap();
        let s1 = simple(&a2, 0);
        let d = decompose(&s1.power(3), &lim).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].multiplicity, 3);
        assert!(isomorphic(&d.summands[0].module, &s1, &lim).unwrap());
    }

    #[test]
    fn lambda_has_four_projective_summands() {
        let lim = Limits::default();
        let lam = builtin::lambda(Field::default(), &lim).unwrap();
        let d = decompose(&regular_module(&lam), &lim).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.summands.len(), 4);
        for s in &d.summands {
            assert!((0..4).any(|v| isomorphic(&s.module, &projective(&lam, v), &lim).unwrap()));
        }
        let back = Representation::direct_sum(&lam, &d.expanded());
        assert!(isomorphic(&back, &regular_module(&lam), &lim).unwrap());
    }

    #[test]
    fn decompose_is_idempotent_on_summands() {
        let lim = Limits::default();
        let lam = builtin::lambda(Field::default(), &lim).unwrap();
        let dr = crate::quivalg::injective_cogenerator(&lam);
        for s in decompose(&dr, &lim).unwrap().summands {
            let again = decompose(&s.module, &lim).unwrap();
            assert_eq!(again.len(), 1);
            assert!(isomorphic(&again.summands[0].module, &s.module, &lim).unwrap());
        }
    }
}
