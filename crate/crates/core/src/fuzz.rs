//! Randomized conjugates of unipotent block matrices. Each case draws a
//! partition of d, builds the block matrix U, conjugates by a random
//! integer unimodular T, and checks the growth engine against the value
//! the partition predicts.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gallery::jordan_block_diag;
use crate::matrix::RatMatrix;
use crate::model::torus::build_torus;
use crate::rat::Rat;
use crate::{growth, verdict, Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct FuzzCase {
    pub seed: u64,
    pub dim: usize,
    pub partition: Vec<usize>,
    pub matrix: Vec<Vec<Rat>>,
    pub expected_plov: usize,
    pub plov: usize,
    pub formula_ok: bool,
    pub partition_ok: bool,
    pub bounds_ok: bool,
}

impl FuzzCase {
    pub fn all_ok(&self) -> bool {
        self.formula_ok && self.partition_ok && self.bounds_ok
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    pub cases: Vec<FuzzCase>,
    pub all_ok: bool,
}

fn random_partition(d: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = d;
    while left > 0 {
        let p = rng.random_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Product of about d + 2 elementary row operations; det is +-1 throughout.
fn random_unimodular(d: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    let mut t = RatMatrix::identity(d);
    let ops = d + 2;
    for _ in 0..ops {
        match rng.random_range(0..3u8) {
            0 if d >= 2 => {
                let r = rng.random_range(0..d);
                let mut s = rng.random_range(0..d);
                while s == r {
                    s = rng.random_range(0..d);
                }
                let c = *[-2i64, -1, 1, 2]
                    .get(rng.random_range(0..4usize))
                    .expect("index in range");
                let add = RatMatrix::from_fn(d, d, |i, j| {
                    if i == j {
                        Rat::one()
                    } else if i == s && j == r {
                        Rat::from(c)
                    } else {
                        Rat::zero()
                    }
                });
                t = &add * &t;
            }
            1 if d >= 2 => {
                let r = rng.random_range(0..d);
                let mut s = rng.random_range(0..d);
                while s == r {
                    s = rng.random_range(0..d);
                }
                let swap = RatMatrix::from_fn(d, d, |i, j| {
                    let jj = if i == r {
                        s
                    } else if i == s {
                        r
                    } else {
                        i
                    };
                    if j == jj {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                });
                t = &swap * &t;
            }
            _ => {
                let r = rng.random_range(0..d);
                let neg = RatMatrix::from_fn(d, d, |i, j| {
                    if i != j {
                        Rat::zero()
                    } else if i == r {
                        -Rat::one()
                    } else {
                        Rat::one()
                    }
                });
                t = &neg * &t;
            }
        }
    }
    t
}

pub fn run_case(dim: usize, seed: u64) -> Result<FuzzCase> {
    if dim == 0 {
        return Err(Error::Invalid("fuzz dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let partition = random_partition(dim, &mut rng);
    let u = jordan_block_diag(&partition);
    let t = random_unimodular(dim, &mut rng);
    let t_inv = t.inverse().ok_or_else(|| {
        Error::Integrity("random unimodular matrix failed to invert".into())
    })?;
    let a = &(&t * &u) * &t_inv;
    for i in 0..dim {
        for j in 0..dim {
            if !a[(i, j)].is_integer() {
                return Err(Error::Integrity(
                    "conjugated matrix has a non-integer entry".into(),
                ));
            }
        }
    }

    let (model, auto) = build_torus(&a)?;
    let growth = growth::plov(&model, &auto)?;
    let expected_plov: usize = partition.iter().map(|b| b * b).sum();

    // The partition describes the d x d input matrix, not the induced action.
    let cert = crate::spectral::certify(&a)?;
    let mut found = cert.jordan_partition.clone();
    found.sort_unstable_by(|x, y| y.cmp(x));
    let partition_ok = found == partition;

    let bounds = verdict::bound_report(&model, &auto, &growth)?;

    let matrix = (0..dim).map(|i| a.row(i).to_vec()).collect();
    Ok(FuzzCase {
        seed,
        dim,
        partition,
        matrix,
        expected_plov,
        plov: growth.plov,
        formula_ok: growth.plov == expected_plov,
        partition_ok,
        bounds_ok: bounds.all_applicable_pass(),
    })
}

pub fn run_many(dim: usize, count: usize, seed: u64) -> Result<FuzzReport> {
    let mut cases = Vec::with_capacity(count);
    for i in 0..count {
        cases.push(run_case(dim, seed.wrapping_add(i as u64))?);
    }
    let all_ok = cases.iter().all(FuzzCase::all_ok);
    Ok(FuzzReport {
        dim,
        count,
        seed,
        cases,
        all_ok,
    })
}
