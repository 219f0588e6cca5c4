use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffld::{Field, Mat};
use crate::quivalg::{Algebra, Path};

/// A finite-dimensional representation: one vector space per vertex and one
/// matrix per arrow (`target_dim x source_dim`).
#[derive(Clone)]
pub struct Representation {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Mat>,
    name: Option<String>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.name.as_deref().unwrap_or("M"), self.dims)
    }
}

impl Representation {
    /// Checks map shapes; relations are checked separately by
    /// [`Representation::relation_violation`].
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        if dims.len() != alg.vertex_count() {
            return Err(Error::input(format!(
                "expected {} vertex dimensions, got {}",
                alg.vertex_count(),
                dims.len()
            )));
        }
        if maps.len() != alg.arrow_count() {
            return Err(Error::input(format!(
                "expected {} arrow matrices, got {}",
                alg.arrow_count(),
                maps.len()
            )));
        }
        for (a, m) in alg.quiver().arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::input(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::input("matrix over the wrong field"));
            }
        }
        Ok(Representation {
            alg,
            dims,
            maps,
            name: None,
        })
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let dims = vec![0; alg.vertex_count()];
        let maps = (0..alg.arrow_count()).map(|_| Mat::zeros(alg.field(), 0, 0)).collect();
        Representation {
            alg: alg.clone(),
            dims,
            maps,
            name: Some("0".into()),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }
    pub fn map(&self, arrow: usize) -> &Mat {
        &self.maps[arrow]
    }
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("M{:?}", self.dims),
        }
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        self.alg.same_as(&other.alg)
    }

    pub(crate) fn check_same_algebra(&self, other: &Representation) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "modules live over different algebras (`{}` vs `{}`)",
                self.alg.name(),
                other.alg.name()
            )))
        }
    }

    /// Action of a path: `M(a_k) * ... * M(a_1)`.
    pub fn path_matrix(&self, p: &Path) -> Mat {
        let mut acc = Mat::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// First relation (or nilpotency condition) that does not vanish, as a
    /// human-readable label.
    pub fn relation_violation(&self) -> Option<String> {
        let q = self.alg.quiver();
        let k = self.field();
        for (ri, r) in self.alg.relations().iter().enumerate() {
            let mut acc = Mat::zeros(k, self.dims[r.target()], self.dims[r.source()]);
            for (c, p) in r.terms() {
                acc = acc.add(&self.path_matrix(p).scale(*c));
            }
            if !acc.is_zero() {
                return Some(format!("relation #{ri}: {}", r.label(q)));
            }
        }
        // Paths of the stable length must act as zero.
        let l = self.alg.stable_length();
        let mut frontier: Vec<(Path, Mat)> = (0..self.alg.vertex_count())
            .filter(|&v| self.dims[v] > 0)
            .map(|v| (Path::trivial(v), Mat::identity(k, self.dims[v])))
            .collect();
        for _ in 0..l {
            let mut next = Vec::new();
            for (p, m) in &frontier {
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.source == p.target {
                        let prod = self.maps[ai].mul(m);
                        if !prod.is_zero() {
                            let mut arrows = p.arrows.clone();
                            arrows.push(ai);
                            next.push((
                                Path {
                                    source: p.source,
                                    target: a.target,
                                    arrows,
                                },
                                prod,
                            ));
                        }
                    }
                }
            }
            frontier = next;
        }
        frontier
            .first()
            .map(|(p, _)| format!("path {} of length {l} acts nonzero", p.label(q)))
    }

    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Representation]) -> Representation {
        let k = alg.field();
        let dims: Vec<usize> = (0..alg.vertex_count())
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = (0..alg.arrow_count())
            .map(|a| {
                let blocks: Vec<&Mat> = parts.iter().map(|p| &p.maps[a]).collect();
                Mat::block_diag(k, &blocks)
            })
            .collect();
        Representation {
            alg: alg.clone(),
            dims,
            maps,
            name: None,
        }
    }

    /// `self` repeated `n` times.
    pub fn power(&self, n: usize) -> Representation {
        let parts = vec![self.clone(); n];
        Representation::direct_sum(&self.alg, &parts)
    }

    /// Vector-space dual over the opposite algebra: `(DM)_v = M_v^*` and each
    /// arrow acts by the transpose.
    pub fn dual(&self) -> Representation {
        let op = self.alg.opposite();
        Representation {
            alg: op,
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Mat::transpose).collect(),
            name: self.name.as_ref().map(|n| match n.strip_prefix('D') {
                Some(rest) if rest.starts_with('(') => rest.trim_start_matches('(').trim_end_matches(')').to_string(),
                _ => format!("D({n})"),
            }),
        }
    }

    /// Entries flattened arrow by arrow; used as a cheap structural key.
    pub fn flat(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }
}

/// A homomorphism of representations given by one block per vertex.
#[derive(Clone)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    blocks: Vec<Mat>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.source, self.target, self.blocks)
    }
}

impl Morphism {
    /// Checks block shapes and the intertwining condition on every arrow.
    pub fn new(source: Representation, target: Representation, blocks: Vec<Mat>) -> Result<Self> {
        source.check_same_algebra(&target)?;
        let n = source.alg.vertex_count();
        if blocks.len() != n {
            return Err(Error::input("morphism needs one block per vertex"));
        }
        for v in 0..n {
            if blocks[v].rows() != target.dims[v] || blocks[v].cols() != source.dims[v] {
                return Err(Error::input(format!("morphism block at vertex {v} has the wrong shape")));
            }
        }
        let m = Morphism {
            source,
            target,
            blocks,
        };
        if let Some(a) = m.intertwining_failure() {
            return Err(Error::input(format!("blocks do not commute with arrow `{a}`")));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, blocks: Vec<Mat>) -> Self {
        debug_assert!(blocks.len() == source.alg.vertex_count());
        Morphism {
            source,
            target,
            blocks,
        }
    }

    pub fn intertwining_failure(&self) -> Option<String> {
        for (ai, a) in self.source.alg.quiver().arrows().iter().enumerate() {
            let lhs = self.target.maps[ai].mul(&self.blocks[a.source]);
            let rhs = self.blocks[a.target].mul(&self.source.maps[ai]);
            if lhs != rhs {
                return Some(a.name.clone());
            }
        }
        None
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let k = source.field();
        let blocks = (0..source.dims.len())
            .map(|v| Mat::zeros(k, target.dims[v], source.dims[v]))
            .collect();
        Morphism::new_unchecked(source.clone(), target.clone(), blocks)
    }

    pub fn identity(m: &Representation) -> Self {
        let k = m.field();
        let blocks = m.dims.iter().map(|&d| Mat::identity(k, d)).collect();
        Morphism::new_unchecked(m.clone(), m.clone(), blocks)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }
    pub fn target(&self) -> &Representation {
        &self.target
    }
    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }
    pub fn block(&self, v: usize) -> &Mat {
        &self.blocks[v]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Morphism {
        let blocks = g.blocks.iter().zip(&self.blocks).map(|(b, a)| b.mul(a)).collect();
        Morphism::new_unchecked(self.source.clone(), g.target.clone(), blocks)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, c: u32) -> Morphism {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(Mat::is_invertible)
    }

    pub fn rank_total(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    pub fn flat(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn dual(&self) -> Morphism {
        Morphism::new_unchecked(
            self.target.dual(),
            self.source.dual(),
            self.blocks.iter().map(Mat::transpose).collect(),
        )
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let blocks: Option<Vec<Mat>> = self.blocks.iter().map(Mat::inverse).collect();
        blocks.map(|b| Morphism::new_unchecked(self.target.clone(), self.source.clone(), b))
    }

    /// Same blocks, relabelled endpoints (which must have matching shapes).
    pub(crate) fn with_endpoints(&self, source: Representation, target: Representation) -> Morphism {
        Morphism::new_unchecked(source, target, self.blocks.clone())
    }

    /// Morphism `⊕ sources -> target` with the given components.
    pub fn from_sum(target: &Representation, components: &[Morphism]) -> Morphism {
        let alg = target.algebra();
        let k = target.field();
        let sources: Vec<Representation> = components.iter().map(|c| c.source.clone()).collect();
        let src = Representation::direct_sum(alg, &sources);
        let blocks = (0..alg.vertex_count())
            .map(|v| {
                let parts: Vec<&Mat> = components.iter().map(|c| &c.blocks[v]).collect();
                Mat::hstack(k, target.dims[v], &parts)
            })
            .collect();
        Morphism::new_unchecked(src, target.clone(), blocks)
    }

    /// Morphism `source -> ⊕ targets` with the given components.
    pub fn into_sum(source: &Representation, components: &[Morphism]) -> Morphism {
        let alg = source.algebra();
        let k = source.field();
        let targets: Vec<Representation> = components.iter().map(|c| c.target.clone()).collect();
        let tgt = Representation::direct_sum(alg, &targets);
        let blocks = (0..alg.vertex_count())
            .map(|v| {
                let parts: Vec<&Mat> = components.iter().map(|c| &c.blocks[v]).collect();
                Mat::vstack(k, source.dims[v], &parts)
            })
            .collect();
        Morphism::new_unchecked(source.clone(), tgt, blocks)
    }

    /// Block-diagonal `⊕ f_i : ⊕ A_i -> ⊕ B_i`.
    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Morphism]) -> Morphism {
        let k = alg.field();
        let s: Vec<Representation> = parts.iter().map(|m| m.source.clone()).collect();
        let t: Vec<Representation> = parts.iter().map(|m| m.target.clone()).collect();
        let blocks = (0..alg.vertex_count())
            .map(|v| {
                let b: Vec<&Mat> = parts.iter().map(|m| &m.blocks[v]).collect();
                Mat::block_diag(k, &b)
            })
            .collect();
        Morphism::new_unchecked(
            Representation::direct_sum(alg, &s),
            Representation::direct_sum(alg, &t),
            blocks,
        )
    }
}

/// Kernel, image and cokernel of a morphism with their structure maps.
#[derive(Clone, Debug)]
pub struct KernelCokernel {
    pub kernel: Representation,
    pub inclusion: Morphism,
    pub image: Representation,
    /// `source -> image` (corestriction).
    pub coimage: Morphism,
    /// `image -> target`.
    pub image_inclusion: Morphism,
    pub cokernel: Representation,
    pub projection: Morphism,
}

/// Restriction of `m` to the subspaces spanned by the columns of `bases`
/// (which must be stable under every arrow).
fn subrepresentation(m: &Representation, bases: &[Mat]) -> Representation {
    let k = m.field();
    let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
    let maps = m
        .alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let img = m.maps[ai].mul(&bases[a.source]);
            if dims[a.target] == 0 || dims[a.source] == 0 {
                return Mat::zeros(k, dims[a.target], dims[a.source]);
            }
            bases[a.target]
                .solve(&img)
                .expect("shapes agree")
                .expect("subspace is arrow-stable")
        })
        .collect();
    Representation {
        alg: m.alg.clone(),
        dims,
        maps,
        name: None,
    }
}

/// Kernel, image and cokernel computed vertexwise with induced arrow maps.
pub fn kernel_cokernel(f: &Morphism) -> KernelCokernel {
    let k = f.source.field();
    let src = &f.source;
    let tgt = &f.target;
    let ker_bases: Vec<Mat> = f.blocks.iter().map(Mat::kernel).collect();
    let kernel = subrepresentation(src, &ker_bases);
    let inclusion = Morphism::new_unchecked(kernel.clone(), src.clone(), ker_bases);

    let im_bases: Vec<Mat> = f.blocks.iter().map(Mat::column_space).collect();
    let image = subrepresentation(tgt, &im_bases);
    let coimage_blocks = f
        .blocks
        .iter()
        .zip(&im_bases)
        .map(|(b, basis)| {
            if basis.cols() == 0 {
                Mat::zeros(k, 0, b.cols())
            } else {
                basis.solve(b).expect("shapes").expect("image contains columns")
            }
        })
        .collect();
    let coimage = Morphism::new_unchecked(src.clone(), image.clone(), coimage_blocks);
    let image_inclusion = Morphism::new_unchecked(image.clone(), tgt.clone(), im_bases.clone());

    // Cokernel: complete the image basis, read off complementary coordinates.
    let mut q_blocks = Vec::new();
    let mut sections = Vec::new();
    for (v, basis) in im_bases.iter().enumerate() {
        let n = tgt.dims[v];
        let comp = Mat::complement_columns(basis);
        let full = Mat::hstack(k, n, &[basis, &comp]);
        let inv = full.inverse().expect("completed basis is invertible");
        let rows: Vec<usize> = (basis.cols()..n).collect();
        q_blocks.push(inv.select_rows(&rows));
        sections.push(comp);
    }
    let coker_dims: Vec<usize> = q_blocks.iter().map(Mat::rows).collect();
    let coker_maps = tgt
        .alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| q_blocks[a.target].mul(&tgt.maps[ai]).mul(&sections[a.source]))
        .collect();
    let _ = coker_dims;
    let cokernel = Representation {
        alg: tgt.alg.clone(),
        dims: q_blocks.iter().map(Mat::rows).collect(),
        maps: coker_maps,
        name: None,
    };
    let projection = Morphism::new_unchecked(tgt.clone(), cokernel.clone(), q_blocks);
    KernelCokernel {
        kernel,
        inclusion,
        image,
        coimage,
        image_inclusion,
        cokernel,
        projection,
    }
}

/// The morphism `coker f -> coker g` induced by `beta` when `beta ∘ f`
/// factors through `g`. `qf`, `qg` are the cokernel projections.
pub fn induced_on_cokernels(qf: &Morphism, qg: &Morphism, beta: &Morphism) -> Morphism {
    let k = beta.source.field();
    let blocks = (0..qf.blocks.len())
        .map(|v| {
            let q = &qf.blocks[v];
            // Section of q: solve q * s = I.
            let s = if q.rows() == 0 {
                Mat::zeros(k, q.cols(), 0)
            } else {
                q.solve(&Mat::identity(k, q.rows())).expect("shapes").expect("projection is onto")
            };
            qg.blocks[v].mul(&beta.blocks[v]).mul(&s)
        })
        .collect();
    Morphism::new_unchecked(qf.target.clone(), qg.target.clone(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::limits::Limits;
    use crate::modrep::hom_basis;
    use crate::quivalg::{projective, simple};

    #[test]
    fn kernel_of_identity_and_zero() {
        let a2 = builtin::a2(Field::default(), &Limits::default()).unwrap();
        let p1 = projective(&a2, 0);
        let kc = kernel_cokernel(&Morphism::identity(&p1));
        assert!(kc.kernel.is_zero() && kc.cokernel.is_zero());
        let s1 = simple(&a2, 0);
        let kc = kernel_cokernel(&Morphism::zero(&p1, &s1));
        assert_eq!(kc.kernel.dims(), p1.dims());
        assert_eq!(kc.cokernel.dims(), s1.dims());
    }

    #[test]
    fn epi_p1_s1_has_kernel_s2() {
        let a2 = builtin::a2(Field::default(), &Limits::default()).unwrap();
        let (p1, s1) = (projective(&a2, 0), simple(&a2, 0));
        let h = hom_basis(&p1, &s1).unwrap();
        assert_eq!(h.len(), 1);
        let kc = kernel_cokernel(&h[0]);
        assert_eq!(kc.kernel.dims(), &[0, 1]);
        assert!(kc.cokernel.is_zero());
        for v in 0..2 {
            assert_eq!(kc.kernel.dim(v) + kc.image.dim(v), p1.dim(v));
        }
        assert!(kc.inclusion.intertwining_failure().is_none());
        assert!(kc.projection.intertwining_failure().is_none());
        assert!(kc.coimage.then(&kc.image_inclusion).flat() == h[0].flat());
    }

    #[test]
    fn morphism_constructor_rejects_non_intertwiners() {
        let a2 = builtin::a2(Field::default(), &Limits::default()).unwrap();
        let (p1, s2) = (projective(&a2, 0), simple(&a2, 1));
        let k = Field::default();
        // The inclusion S(2) -> P(1) is fine; the map P(1) -> S(2) at vertex 2 is not.
        let bad = vec![Mat::zeros(k, 0, 1), Mat::identity(k, 1)];
        assert!(Morphism::new(p1.clone(), s2.clone(), bad).is_err());
        let good = vec![Mat::zeros(k, 1, 0), Mat::identity(k, 1)];
        assert!(Morphism::new(s2, p1, good).is_ok());
    }
}
