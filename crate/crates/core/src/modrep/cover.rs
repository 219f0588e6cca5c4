use crate::ffld::Mat;
use crate::modrep::{kernel_cokernel, Morphism, Representation};
use crate::quivalg::projective;

/// Radical `sum_a Im(M_a)` at every vertex, as a column basis.
pub fn radical_basis(m: &Representation) -> Vec<Mat> {
    let k = m.field();
    let alg = m.algebra();
    (0..alg.vertex_count())
        .map(|v| {
            let parts: Vec<&Mat> = alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == v)
                .map(|(ai, _)| m.map(ai))
                .collect();
            Mat::hstack(k, m.dim(v), &parts).column_space()
        })
        .collect()
}

/// Dimension vector of `top M = M / rad M`.
pub fn top_dims(m: &Representation) -> Vec<usize> {
    radical_basis(m)
        .iter()
        .enumerate()
        .map(|(v, r)| m.dim(v) - r.cols())
        .collect()
}

/// Dimension vector of the socle: vectors killed by every outgoing arrow.
pub fn socle_dims(m: &Representation) -> Vec<usize> {
    let k = m.field();
    let alg = m.algebra();
    (0..alg.vertex_count())
        .map(|v| {
            let parts: Vec<&Mat> = alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == v)
                .map(|(ai, _)| m.map(ai))
                .collect();
            let stacked = Mat::vstack(k, m.dim(v), &parts);
            m.dim(v) - stacked.rank()
        })
        .collect()
}

/// The morphism `P(v) -> M` sending the trivial path `e_v` to `x in M_v`.
pub fn from_projective(m: &Representation, v: usize, x: &Mat) -> Morphism {
    let alg = m.algebra();
    let k = m.field();
    let p = projective(alg, v);
    let blocks = (0..alg.vertex_count())
        .map(|w| {
            let cols: Vec<Mat> = alg
                .basis_between(v, w)
                .into_iter()
                .map(|b| m.path_matrix(alg.basis_path(b)).mul(x))
                .collect();
            let refs: Vec<&Mat> = cols.iter().collect();
            Mat::hstack(k, m.dim(w), &refs)
        })
        .collect();
    Morphism::new_unchecked(p, m.clone(), blocks)
}

/// Minimal projective cover: one `P(v)` per basis vector of a complement of
/// the radical at `v`.
pub fn projective_cover(m: &Representation) -> (Representation, Morphism) {
    let alg = m.algebra();
    let mut comps = Vec::new();
    for (v, rad) in radical_basis(m).iter().enumerate() {
        let comp = Mat::complement_columns(rad);
        for c in 0..comp.cols() {
            comps.push(from_projective(m, v, &comp.column(c)));
        }
    }
    if comps.is_empty() {
        let z = Representation::zero(alg);
        return (z.clone(), Morphism::zero(&z, m));
    }
    let epi = Morphism::from_sum(m, &comps);
    (epi.source().clone(), epi)
}

/// First syzygy `Omega M = ker(P(M) -> M)` with its inclusion into the cover.
pub fn syzygy(m: &Representation) -> (Representation, Morphism, Morphism) {
    let (_, epi) = projective_cover(m);
    let kc = kernel_cokernel(&epi);
    (kc.kernel, kc.inclusion, epi)
}
