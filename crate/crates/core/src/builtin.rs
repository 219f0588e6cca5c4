//! Named algebras available without an input file.

use std::sync::Arc;

use crate::error::Result;
use crate::ffld::Field;
use crate::limits::Limits;
use crate::quivalg::{Algebra, Quiver};
use crate::recol::{total_algebra, Mode};

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &["A2", "k", "A2-regular", "lambda", "A2-zero"];

/// The path algebra of `1 -> 2` (arrow `b`).
pub fn a2(field: Field, limits: &Limits) -> Result<Arc<Algebra>> {
    let q = Quiver::new(&["1", "2"], &[("b", "1", "2")])?;
    Algebra::new("A2", field, q, vec![], None, limits)
}

/// The ground field as a one-vertex algebra.
pub fn point(field: Field, limits: &Limits) -> Result<Arc<Algebra>> {
    let q = Quiver::new::<&str, &str>(&["1"], &[])?;
    Algebra::new("k", field, q, vec![], None, limits)
}

/// Lower triangular matrices over `A2` with the regular bimodule.
pub fn lambda(field: Field, limits: &Limits) -> Result<Arc<Algebra>> {
    total_algebra(&a2(field, limits)?, Mode::Regular, limits)
}

/// `A2 x A2`.
pub fn lambda_zero(field: Field, limits: &Limits) -> Result<Arc<Algebra>> {
    total_algebra(&a2(field, limits)?, Mode::Zero, limits)
}

pub fn by_name(name: &str, field: Field, limits: &Limits) -> Option<Result<Arc<Algebra>>> {
    match name {
        "A2" | "a2" => Some(a2(field, limits)),
        "k" => Some(point(field, limits)),
        "A2-regular" | "lambda" | "Lambda" => Some(lambda(field, limits)),
        "A2-zero" => Some(lambda_zero(field, limits)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for n in NAMES {
            let alg = by_name(n, Field::default(), &Limits::default()).unwrap().unwrap();
            assert!(alg.dimension() > 0);
        }
        assert!(by_name("nope", Field::default(), &Limits::default()).is_none());
    }

    #[test]
    fn dimensions() {
        let lim = Limits::default();
        let k = Field::default();
        assert_eq!(a2(k, &lim).unwrap().dimension(), 3);
        assert_eq!(point(k, &lim).unwrap().dimension(), 1);
        assert_eq!(lambda(k, &lim).unwrap().dimension(), 9);
        assert_eq!(lambda_zero(k, &lim).unwrap().dimension(), 6);
    }
}
