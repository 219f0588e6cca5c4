use crate::error::Result;
use crate::ffld::Mat;
use crate::modrep::{Morphism, Representation};

/// Coefficient matrix of the intertwining equations `N_a X_u - X_w M_a = 0`,
/// with unknowns laid out vertex by vertex, row-major inside each block.
fn intertwining_system(m: &Representation, n: &Representation) -> (Mat, Vec<usize>) {
    let k = m.field();
    let alg = m.algebra();
    let nv = alg.vertex_count();
    let mut offsets = Vec::with_capacity(nv + 1);
    let mut acc = 0;
    for v in 0..nv {
        offsets.push(acc);
        acc += n.dim(v) * m.dim(v);
    }
    offsets.push(acc);
    let unknowns = acc;
    let eqs: usize = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| n.dim(a.target) * m.dim(a.source))
        .sum();
    let mut sys = Mat::zeros(k, eqs, unknowns);
    let mut row = 0;
    for (ai, a) in alg.quiver().arrows().iter().enumerate() {
        let (u, w) = (a.source, a.target);
        let (na, ma) = (n.map(ai), m.map(ai));
        for i in 0..n.dim(w) {
            for j in 0..m.dim(u) {
                // (N_a X_u)[i][j] = sum_l N_a[i][l] X_u[l][j]
                for l in 0..n.dim(u) {
                    let c = na.get(i, l);
                    if c != 0 {
                        let col = offsets[u] + l * m.dim(u) + j;
                        sys.set(row, col, k.add(sys.get(row, col), c));
                    }
                }
                // -(X_w M_a)[i][j] = -sum_l X_w[i][l] M_a[l][j]
                for l in 0..m.dim(w) {
                    let c = ma.get(l, j);
                    if c != 0 {
                        let col = offsets[w] + i * m.dim(w) + l;
                        sys.set(row, col, k.sub(sys.get(row, col), c));
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offsets)
}

/// Dimension of `Hom(M, N)`.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_same_algebra(n)?;
    let (sys, offsets) = intertwining_system(m, n);
    Ok(offsets[offsets.len() - 1] - sys.rank())
}

/// A basis of `Hom(M, N)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    m.check_same_algebra(n)?;
    let k = m.field();
    let (sys, offsets) = intertwining_system(m, n);
    let ker = sys.kernel();
    let nv = m.algebra().vertex_count();
    let mut out = Vec::with_capacity(ker.cols());
    for c in 0..ker.cols() {
        let blocks = (0..nv)
            .map(|v| {
                Mat::from_fn(k, n.dim(v), m.dim(v), |i, j| {
                    ker.get(offsets[v] + i * m.dim(v) + j, c)
                })
            })
            .collect();
        out.push(Morphism::new_unchecked(m.clone(), n.clone(), blocks));
    }
    Ok(out)
}

/// Linear combination `sum coeffs[i] * basis[i]`; `basis` must be nonempty.
pub fn combine(basis: &[Morphism], coeffs: &[u32]) -> Morphism {
    let mut acc = Morphism::zero(basis[0].source(), basis[0].target());
    for (f, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&f.scale(c));
        }
    }
    acc
}
