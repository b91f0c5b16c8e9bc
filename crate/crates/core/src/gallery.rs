//! Built-in example models with frozen expected invariants. Every entry is
//! recomputed by the test suite; the expectations are how regressions in
//! the growth engine surface.

use crate::matrix::RatMatrix;
use crate::model::fujiki::build_fujiki;
use crate::model::product::build_product;
use crate::model::torus::build_torus;
use crate::model::{AutoAction, IntersectionModel};
use crate::rat::Rat;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub expected_d: usize,
    /// None when the carrier does not determine the Jordan invariant.
    pub expected_k: Option<usize>,
    pub expected_plov: usize,
    pub expected_m: u64,
}

pub fn entries() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry {
            name: "identity-d1",
            summary: "trivial action on a 1-dimensional torus model",
            expected_d: 1,
            expected_k: Some(0),
            expected_plov: 1,
            expected_m: 1,
        },
        GalleryEntry {
            name: "identity-d2",
            summary: "trivial action on a 2-dimensional torus model",
            expected_d: 2,
            expected_k: Some(0),
            expected_plov: 2,
            expected_m: 1,
        },
        GalleryEntry {
            name: "identity-d3",
            summary: "trivial action on a 3-dimensional torus model",
            expected_d: 3,
            expected_k: Some(0),
            expected_plov: 3,
            expected_m: 1,
        },
        GalleryEntry {
            name: "identity-d4",
            summary: "trivial action on a 4-dimensional torus model",
            expected_d: 4,
            expected_k: Some(0),
            expected_plov: 4,
            expected_m: 1,
        },
        GalleryEntry {
            name: "identity-d5",
            summary: "trivial action on a 5-dimensional torus model",
            expected_d: 5,
            expected_k: Some(0),
            expected_plov: 5,
            expected_m: 1,
        },
        GalleryEntry {
            name: "rotation-order4",
            summary: "order-4 rotation; the induced action has order 2",
            expected_d: 2,
            expected_k: Some(0),
            expected_plov: 2,
            expected_m: 2,
        },
        GalleryEntry {
            name: "torus-jordan-d2",
            summary: "single maximal unipotent block, d = 2",
            expected_d: 2,
            expected_k: Some(2),
            expected_plov: 4,
            expected_m: 1,
        },
        GalleryEntry {
            name: "torus-jordan-d3",
            summary: "single maximal unipotent block, d = 3",
            expected_d: 3,
            expected_k: Some(4),
            expected_plov: 9,
            expected_m: 1,
        },
        GalleryEntry {
            name: "torus-jordan-d4",
            summary: "single maximal unipotent block, d = 4",
            expected_d: 4,
            expected_k: Some(6),
            expected_plov: 16,
            expected_m: 1,
        },
        GalleryEntry {
            name: "torus-jordan-d5",
            summary: "single maximal unipotent block, d = 5",
            expected_d: 5,
            expected_k: Some(8),
            expected_plov: 25,
            expected_m: 1,
        },
        GalleryEntry {
            name: "torus-j21",
            summary: "unipotent blocks (2, 1) on a threefold torus model",
            expected_d: 3,
            expected_k: Some(2),
            expected_plov: 5,
            expected_m: 1,
        },
        GalleryEntry {
            name: "torus-j22",
            summary: "unipotent blocks (2, 2) on a fourfold torus model",
            expected_d: 4,
            expected_k: Some(2),
            expected_plov: 8,
            expected_m: 1,
        },
        GalleryEntry {
            name: "torus-j31",
            summary: "unipotent blocks (3, 1) on a fourfold torus model",
            expected_d: 4,
            expected_k: Some(4),
            expected_plov: 10,
            expected_m: 1,
        },
        GalleryEntry {
            name: "product-j2xj2",
            summary: "product of two block-2 torus models; growth adds up",
            expected_d: 4,
            expected_k: None,
            expected_plov: 8,
            expected_m: 1,
        },
        GalleryEntry {
            name: "fujiki-parabolic-d1",
            summary: "parabolic isometry of a rank-3 hyperbolic lattice, half-dim 1",
            expected_d: 2,
            expected_k: Some(2),
            expected_plov: 4,
            expected_m: 1,
        },
        GalleryEntry {
            name: "fujiki-parabolic-d2",
            summary: "parabolic isometry of a rank-3 hyperbolic lattice, half-dim 2",
            expected_d: 4,
            expected_k: Some(2),
            expected_plov: 8,
            expected_m: 1,
        },
        GalleryEntry {
            name: "fujiki-involution-d1",
            summary: "finite-order isometry, half-dim 1",
            expected_d: 2,
            expected_k: Some(0),
            expected_plov: 2,
            expected_m: 2,
        },
        GalleryEntry {
            name: "fujiki-involution-d2",
            summary: "finite-order isometry, half-dim 2",
            expected_d: 4,
            expected_k: Some(0),
            expected_plov: 4,
            expected_m: 2,
        },
    ]
}

pub fn find(name: &str) -> Option<GalleryEntry> {
    entries().into_iter().find(|e| e.name == name)
}

pub(crate) fn jordan_block_diag(blocks: &[usize]) -> RatMatrix {
    let d: usize = blocks.iter().sum();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        offsets.push(acc);
        acc += b;
    }
    RatMatrix::from_fn(d, d, |i, j| {
        for (&off, &b) in offsets.iter().zip(blocks) {
            if i >= off && i < off + b {
                if i == j || (j + 1 == i && j >= off) {
                    return Rat::one();
                }
                return Rat::zero();
            }
        }
        Rat::zero()
    })
}

fn torus_entry(a: RatMatrix) -> Result<(IntersectionModel, AutoAction)> {
    build_torus(&a)
}

fn hyperbolic_q() -> RatMatrix {
    RatMatrix::from_i64_rows(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]])
}

fn fujiki_parabolic(half_dim: usize) -> Result<(IntersectionModel, AutoAction)> {
    let omega = vec![Rat::one(), Rat::zero(), Rat::one()];
    let model = build_fujiki(&hyperbolic_q(), &Rat::one(), half_dim, &omega)?;
    // u -> u, w -> w + u, v -> v + w + u/2  (a parabolic isometry fixing u)
    let half = Rat::new(1, 2).expect("nonzero");
    let f = RatMatrix::from_rows(vec![
        vec![Rat::one(), Rat::one(), half],
        vec![Rat::zero(), Rat::one(), Rat::one()],
        vec![Rat::zero(), Rat::zero(), Rat::one()],
    ])?;
    Ok((model, AutoAction::new(f)?))
}

fn fujiki_involution(half_dim: usize) -> Result<(IntersectionModel, AutoAction)> {
    let omega = vec![Rat::one(), Rat::zero(), Rat::one()];
    let model = build_fujiki(&hyperbolic_q(), &Rat::one(), half_dim, &omega)?;
    // u <-> v, w -> -w
    let f = RatMatrix::from_i64_rows(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
    Ok((model, AutoAction::new(f)?))
}

/// Build a gallery model with its action by name.
pub fn build(name: &str) -> Result<(IntersectionModel, AutoAction)> {
    match name {
        "identity-d1" => torus_entry(RatMatrix::identity(1)),
        "identity-d2" => torus_entry(RatMatrix::identity(2)),
        "identity-d3" => torus_entry(RatMatrix::identity(3)),
        "identity-d4" => torus_entry(RatMatrix::identity(4)),
        "identity-d5" => torus_entry(RatMatrix::identity(5)),
        "rotation-order4" => torus_entry(RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]])),
        "torus-jordan-d2" => torus_entry(jordan_block_diag(&[2])),
        "torus-jordan-d3" => torus_entry(jordan_block_diag(&[3])),
        "torus-jordan-d4" => torus_entry(jordan_block_diag(&[4])),
        "torus-jordan-d5" => torus_entry(jordan_block_diag(&[5])),
        "torus-j21" => torus_entry(jordan_block_diag(&[2, 1])),
        "torus-j22" => torus_entry(jordan_block_diag(&[2, 2])),
        "torus-j31" => torus_entry(jordan_block_diag(&[3, 1])),
        "product-j2xj2" => {
            let (m1, f1) = torus_entry(jordan_block_diag(&[2]))?;
            let (m2, f2) = torus_entry(jordan_block_diag(&[2]))?;
            build_product(&m1, &f1, &m2, &f2)
        }
        "fujiki-parabolic-d1" => fujiki_parabolic(1),
        "fujiki-parabolic-d2" => fujiki_parabolic(2),
        "fujiki-involution-d1" => fujiki_involution(1),
        "fujiki-involution-d2" => fujiki_involution(2),
        other => Err(Error::Invalid(format!("unknown gallery entry {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds_and_validates() {
        for e in entries() {
            let (model, auto) = build(e.name).unwrap();
            assert_eq!(model.d(), e.expected_d, "{}", e.name);
            assert!(model.validate(&auto).all_pass(), "{}", e.name);
        }
    }

    #[test]
    fn block_diagonal_shape() {
        let a = jordan_block_diag(&[2, 1]);
        let want = RatMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(a, want);
    }
}
