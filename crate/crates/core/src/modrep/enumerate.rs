use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffld::Mat;
use crate::limits::Limits;
use crate::modrep::{indecomposable, is_isomorphic, socle_dims, top_dims, Certainty, Representation};
use crate::quivalg::{injective, projective, simple, Algebra};

/// Iso-classes of indecomposables with every vertex dimension `<= dim_bound`.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub modules: Vec<Representation>,
    pub dim_bound: usize,
    /// Arrow-matrix configurations inspected.
    pub configurations: u64,
    /// Whether every member carries an exhaustive indecomposability certificate.
    pub certified: bool,
}

fn dim_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=bound).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out.retain(|d| d.iter().any(|&x| x > 0));
    out.sort_by(|a, b| {
        let (sa, sb): (usize, usize) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    out
}

fn entries(alg: &Algebra, dims: &[usize]) -> usize {
    alg.quiver()
        .arrows()
        .iter()
        .map(|a| dims[a.source] * dims[a.target])
        .sum()
}

/// Standard name (`S(v)`, then `P(v)`, then `I(v)`) if `m` is isomorphic to one.
pub fn standard_name(m: &Representation, limits: &Limits) -> Result<Option<String>> {
    let alg = m.algebra();
    for v in 0..alg.vertex_count() {
        for x in [simple(alg, v), projective(alg, v), injective(alg, v)] {
            if x.dims() == m.dims() && is_isomorphic(&x, m, limits)?.holds() {
                return Ok(x.name().map(str::to_string));
            }
        }
    }
    Ok(None)
}

/// All indecomposables of one dimension vector, deduplicated.
fn shard(alg: &Arc<Algebra>, dims: &[usize], limits: &Limits) -> Result<(Vec<(Representation, Certainty)>, u64)> {
    let k = alg.field();
    let p = k.p() as u64;
    let e = entries(alg, dims);
    let total = k.pow_count(e);
    let mut found: Vec<(Representation, Certainty, (Vec<usize>, Vec<usize>))> = Vec::new();
    let arrows = alg.quiver().arrows();
    for code in 0..total {
        let mut c = code;
        let maps: Vec<Mat> = arrows
            .iter()
            .map(|a| {
                Mat::from_fn(k, dims[a.target], dims[a.source], |_, _| {
                    let x = (c % p) as u32;
                    c /= p;
                    x
                })
            })
            .collect();
        let m = Representation::new(alg.clone(), dims.to_vec(), maps)?;
        if m.relation_violation().is_some() {
            continue;
        }
        let Some(cert) = indecomposable(&m, limits)? else {
            continue;
        };
        let key = (top_dims(&m), socle_dims(&m));
        let mut dup = false;
        for (x, _, kx) in &found {
            if *kx == key && is_isomorphic(x, &m, limits)?.holds() {
                dup = true;
                break;
            }
        }
        if !dup {
            found.push((m, cert, key));
        }
    }
    Ok((found.into_iter().map(|(m, c, _)| (m, c)).collect(), total))
}

/// Brute-force enumeration over all arrow matrices, filtered by the relations
/// and deduplicated up to isomorphism. Dimension vectors are independent
/// shards; results are merged in a fixed order.
pub fn enumerate_indecomposables(alg: &Arc<Algebra>, dim_bound: usize, limits: &Limits) -> Result<Enumeration> {
    let k = alg.field();
    let vectors = dim_vectors(alg.vertex_count(), dim_bound);
    let cost = vectors
        .iter()
        .fold(0u64, |acc, d| acc.saturating_add(k.pow_count(entries(alg, d))));
    if cost > limits.guard {
        return Err(Error::resource(
            "guard",
            format!(
                "enumerating `{}` up to dimension {dim_bound} needs {cost} configurations (guard {})",
                alg.name(),
                limits.guard
            ),
        ));
    }
    let shards: Vec<Result<(Vec<(Representation, Certainty)>, u64)>> =
        vectors.par_iter().map(|d| shard(alg, d, limits)).collect();
    let mut modules = Vec::new();
    let mut certified = true;
    let mut configurations = 0;
    for s in shards {
        let (ms, n) = s?;
        configurations += n;
        for (m, c) in ms {
            certified &= c == Certainty::Certified;
            let name = match standard_name(&m, limits)? {
                Some(n) => n,
                None => format!("M{}", modules.len() + 1),
            };
            modules.push(m.with_name(name));
        }
    }
    Ok(Enumeration {
        modules,
        dim_bound,
        configurations,
        certified,
    })
}
