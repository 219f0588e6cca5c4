use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::modrep::{combine, for_each_point, hom_basis, hom_dim, Morphism, Representation};
use crate::quivalg::{injective, projective, simple};

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// An invertible morphism `M -> N`.
    Isomorphic(Morphism),
    /// Why no isomorphism exists.
    Distinct(String),
}

impl IsoVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// `(dim Hom(X, M))_X` and `(dim Hom(M, X))_X` for `X` running over the simple,
/// projective and injective modules.
pub fn hom_profile(m: &Representation) -> Vec<usize> {
    let alg = m.algebra();
    let mut out = Vec::new();
    for v in 0..alg.vertex_count() {
        for x in [simple(alg, v), projective(alg, v), injective(alg, v)] {
            out.push(hom_dim(&x, m).expect("same algebra"));
            out.push(hom_dim(m, &x).expect("same algebra"));
        }
    }
    out
}

/// Decides `M ≅ N`. Random probes first, then exhaustive search over the
/// projective points of `Hom(M, N)` when it fits under `limits.guard`. If the
/// search is too large only structural separators can give a negative answer;
/// otherwise a resource error is returned.
pub fn is_isomorphic(m: &Representation, n: &Representation, limits: &Limits) -> Result<IsoVerdict> {
    m.check_same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::Distinct(format!(
            "dimension vectors differ: {:?} vs {:?}",
            m.dims(),
            n.dims()
        )));
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic(Morphism::identity(m).with_endpoints(m.clone(), n.clone())));
    }
    if m.maps() == n.maps() {
        return Ok(IsoVerdict::Isomorphic(Morphism::identity(m).with_endpoints(m.clone(), n.clone())));
    }
    let end_m = hom_dim(m, m)?;
    let basis = hom_basis(m, n)?;
    if basis.len() != end_m {
        return Ok(IsoVerdict::Distinct(format!(
            "dim Hom(M,N) = {} but dim End(M) = {end_m}",
            basis.len()
        )));
    }
    if hom_dim(n, m)? != hom_dim(n, n)? {
        return Ok(IsoVerdict::Distinct("dim Hom(N,M) differs from dim End(N)".into()));
    }
    let k = m.field();
    let p = k.p();
    let h = basis.len();

    // A sum of basis elements is often invertible already.
    let ones = vec![1u32; h];
    let f = combine(&basis, &ones);
    if f.is_iso() {
        return Ok(IsoVerdict::Isomorphic(f));
    }
    for f in &basis {
        if f.is_iso() {
            return Ok(IsoVerdict::Isomorphic(f.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    for _ in 0..limits.random_tries {
        let coeffs: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        let f = combine(&basis, &coeffs);
        if f.is_iso() {
            return Ok(IsoVerdict::Isomorphic(f));
        }
    }

    let space = k.pow_count(h);
    if space <= limits.guard {
        let mut found = None;
        for_each_point(k, h, |c| {
            let f = combine(&basis, c);
            if f.is_iso() {
                found = Some(f);
                false
            } else {
                true
            }
        });
        return Ok(match found {
            Some(f) => IsoVerdict::Isomorphic(f),
            None => IsoVerdict::Distinct(format!(
                "no invertible element among all {space} elements of Hom(M,N)"
            )),
        });
    }
    if hom_profile(m) != hom_profile(n) {
        return Ok(IsoVerdict::Distinct("Hom-profiles against standard modules differ".into()));
    }
    Err(Error::resource(
        "guard",
        format!(
            "isomorphism search over {p}^{h} morphisms {} -> {} is inconclusive",
            m.label(),
            n.label()
        ),
    ))
}

pub fn isomorphic(m: &Representation, n: &Representation, limits: &Limits) -> Result<bool> {
    is_isomorphic(m, n, limits).map(|v| v.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::ffld::{Field, Mat};
    use crate::quivalg::regular_module;
    use crate::recol::{Instance, Mode, TripleRep};

    #[test]
    fn reflexive_and_separated() {
        let a2 = builtin::a2(Field::default(), &Limits::default()).unwrap();
        let lim = Limits::default();
        let p1 = projective(&a2, 0);
        match is_isomorphic(&p1, &p1, &lim).unwrap() {
            IsoVerdict::Isomorphic(f) => assert!(f.is_iso()),
            IsoVerdict::Distinct(r) => panic!("{r}"),
        }
        assert!(!isomorphic(&simple(&a2, 0), &simple(&a2, 1), &lim).unwrap());
        // I(2) and P(1) are isomorphic for A2.
        assert!(isomorphic(&injective(&a2, 1), &p1, &lim).unwrap());
    }

    #[test]
    fn base_change_is_detected() {
        let k = Field::new(3).unwrap();
        let lam = builtin::lambda(k, &Limits::default()).unwrap();
        let r = regular_module(&lam);
        // Conjugate every map by a fixed invertible matrix per vertex.
        let g: Vec<Mat> = r
            .dims()
            .iter()
            .map(|&d| Mat::from_fn(k, d, d, |i, j| if i <= j { 1 + (i + j) as u32 % 2 } else { 0 }))
            .collect();
        let maps = lam
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| g[a.target].mul(r.map(ai)).mul(&g[a.source].inverse().unwrap()))
            .collect();
        let r2 = Representation::new(lam.clone(), r.dims().to_vec(), maps).unwrap();
        assert!(isomorphic(&r, &r2, &Limits::default()).unwrap());
    }

    #[test]
    fn identity_triple_versus_zero_triple() {
        let lim = Limits::default();
        let a2 = builtin::a2(Field::default(), &lim).unwrap();
        let inst = Instance::build(&a2, Mode::Regular, &lim).unwrap();
        let p1 = projective(&a2, 0);
        let id = TripleRep::new(p1.clone(), p1.clone(), Some(Morphism::identity(&p1))).unwrap();
        let zero = TripleRep::new(p1.clone(), p1.clone(), Some(Morphism::zero(&p1, &p1))).unwrap();
        let a = inst.to_total(&id).unwrap();
        let b = inst.to_total(&zero).unwrap();
        assert!(!isomorphic(&a, &b, &lim).unwrap());
    }
}
