//! Growth of orbit volumes. The engine expands every query about
//! I(sums of pulled-back classes) into exact polynomials in the step count
//! using the nilpotent decomposition of the reduced action.
//!
//! With g the unipotent reduction and N = g - Id on V:
//!
//!   sum_{i=0}^n g^i omega        = sum_j C(n+1, j+1) N^j omega
//!   sum_{i=0}^n (g^i + g^-i) om  = sum_j C(n+1, j+1) (N^j + N'^j) omega
//!   g^n omega + g^-n omega       = sum_j C(n, j) (N^j + N'^j) omega
//!
//! so any intersection number of such sums is a finite sum of products of
//! binomial polynomials weighted by fixed intersection numbers.

use num_bigint::BigInt;
use serde::Serialize;

use crate::model::{sorted_multisets, AutoAction, ClassVec, IntersectionModel, ModelKind, Positivity};
use crate::poly::{binom, binomial_poly, binomial_poly_shifted, factorial, interpolate, QPoly};
use crate::rat::Rat;
use crate::{Error, Result};

/// I(X(n)^i, tail) for a class-valued polynomial X(n) = sum_a p_a(n) c_a,
/// expanded over multisets of the terms with multinomial weights. The
/// multiset terms are independent, so they are evaluated in parallel;
/// exact addition makes the result order-independent.
pub(crate) fn class_poly_power(
    model: &IntersectionModel,
    terms: &[(QPoly, ClassVec)],
    i: usize,
    tail: &[&[Rat]],
) -> Result<QPoly> {
    use rayon::prelude::*;
    sorted_multisets(terms.len(), i)
        .par_iter()
        .map(|multiset| -> Result<QPoly> {
            let mut classes: Vec<&[Rat]> = multiset
                .iter()
                .map(|&a| terms[a].1.as_slice())
                .collect();
            classes.extend_from_slice(tail);
            let val = model.eval_i(&classes)?;
            if val.is_zero() {
                return Ok(QPoly::zero());
            }
            // multinomial weight i! / prod (multiplicities)!
            let mut weight = factorial(i);
            let mut run = 1usize;
            for w in 1..=multiset.len() {
                if w < multiset.len() && multiset[w] == multiset[w - 1] {
                    run += 1;
                } else {
                    weight /= factorial(run);
                    run = 1;
                }
            }
            let mut term = QPoly::constant(val * Rat::from(weight));
            for &a in multiset {
                term = term * terms[a].0.clone();
            }
            Ok(term)
        })
        .try_reduce(QPoly::zero, |a, b| Ok(a + b))
}

fn one_sided_terms(
    cert: &crate::spectral::UnipotentCert,
    omega: &[Rat],
) -> Vec<(QPoly, ClassVec)> {
    let mut terms = Vec::new();
    for j in 0..=cert.k {
        let class = cert.n_power_class(omega, j);
        if class.iter().all(Rat::is_zero) {
            continue;
        }
        terms.push((binomial_poly_shifted(j + 1), class));
    }
    terms
}

fn two_sided_terms(
    cert: &crate::spectral::UnipotentCert,
    omega: &[Rat],
    shifted: bool,
) -> Vec<(QPoly, ClassVec)> {
    let mut terms = Vec::new();
    for j in 0..=cert.k {
        let class = cert.n_two_sided_class(omega, j);
        if class.iter().all(Rat::is_zero) {
            continue;
        }
        let p = if shifted {
            binomial_poly_shifted(j + 1)
        } else {
            binomial_poly(j)
        };
        terms.push((p, class));
    }
    terms
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    /// Degree of n -> I((sum_{i<=n} g^i omega)^d).
    pub plov: usize,
    pub gkdim: usize,
    /// The polynomial itself, constant term I(omega^d).
    pub poly: QPoly,
    /// Degrees of the partial ladder I(Delta_n^i, omega^{d-i}), i = 1..=d.
    pub partial_degrees: Vec<usize>,
    /// Degree of the two-sided analogue; equals plov.
    pub plov_two_sided: usize,
    /// Degree of n -> I((g^n omega + g^-n omega)^d).
    pub d_pol: usize,
    /// k * floor(d / 2) when the Jordan invariant is reportable.
    pub d_pol_bound: Option<usize>,
    pub d_pol_poly: QPoly,
}

/// Exact polynomial log-volume growth of the action, via the reduction
/// g = f^M. Iterating f does not change the degree, so this is the growth
/// invariant of f itself.
pub fn plov(model: &IntersectionModel, auto: &AutoAction) -> Result<GrowthReport> {
    plov_with_class(model, auto, model.omega())
}

/// Growth measured against another positive class. The degree does not
/// depend on the choice; on torus models the class must be positive
/// definite, elsewhere its top power must be positive.
pub fn plov_with_class(
    model: &IntersectionModel,
    auto: &AutoAction,
    omega: &[Rat],
) -> Result<GrowthReport> {
    crate::par::init_threads();
    if model.kind() == ModelKind::Torus {
        if model.torus_positivity(omega)? != Positivity::Positive {
            return Err(Error::Invalid(
                "growth needs a positive definite reference class".into(),
            ));
        }
    } else if !model.eval_power(omega)?.is_positive() {
        return Err(Error::Invalid(
            "growth needs a reference class with positive top power".into(),
        ));
    }
    let d = model.d();
    let cert = auto.cert()?;

    let terms = one_sided_terms(cert, omega);
    let mut partial_degrees = Vec::with_capacity(d);
    let mut poly = QPoly::zero();
    for i in 1..=d {
        let tail: Vec<&[Rat]> = (0..d - i).map(|_| omega).collect();
        let p = class_poly_power(model, &terms, i, &tail)?;
        let deg = p
            .degree()
            .ok_or_else(|| Error::Integrity(format!("ladder step {i} vanished")))?;
        partial_degrees.push(deg);
        if i == d {
            poly = p;
        }
    }
    let plov = *partial_degrees.last().expect("d >= 1");

    let terms2 = two_sided_terms(cert, omega, true);
    let p2 = class_poly_power(model, &terms2, d, &[])?;
    let plov_two_sided = p2
        .degree()
        .ok_or_else(|| Error::Integrity("two-sided volume vanished".into()))?;

    let terms3 = two_sided_terms(cert, omega, false);
    let p3 = class_poly_power(model, &terms3, d, &[])?;
    let d_pol = p3
        .degree()
        .ok_or_else(|| Error::Integrity("polarized volume vanished".into()))?;
    let d_pol_bound = model.k_reportable().then(|| cert.k * (d / 2));

    Ok(GrowthReport {
        plov,
        gkdim: plov + 1,
        poly,
        partial_degrees,
        plov_two_sided,
        d_pol,
        d_pol_bound,
        d_pol_poly: p3,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    /// Volumes were evaluated directly at n = 0..=max_n.
    pub max_n: usize,
    pub poly: QPoly,
    pub agreed: bool,
}

/// Independent route to the growth polynomial: sum the orbit explicitly,
/// evaluate the d-fold self-intersection at enough points, interpolate,
/// and compare with the engine's expansion.
pub fn oracle_check(
    model: &IntersectionModel,
    auto: &AutoAction,
    engine: &QPoly,
) -> Result<OracleReport> {
    let d = model.d();
    let cert = auto.cert()?;
    let max_n = d * (cert.k + 1) + 1;
    let g = &cert.f_m;
    let mut cur = model.omega().clone();
    let mut sum = cur.clone();
    let mut points = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        if n > 0 {
            cur = g.mul_vec(&cur);
            for (s, c) in sum.iter_mut().zip(&cur) {
                *s += c;
            }
        }
        points.push((Rat::from_int(n as i64), model.eval_power(&sum)?));
    }
    let poly = interpolate(&points)?;
    let agreed = poly == *engine;
    Ok(OracleReport { max_n, poly, agreed })
}

/// Graded dimension counts for a torus model: entry 0 is 1, entry m is
/// I((sum_{i<m} f^i L)^d) / d!. Uses f itself, not its reduction. Every
/// partial orbit sum must be positive definite and every count integral.
pub fn hilbert_sequence(
    model: &IntersectionModel,
    auto: &AutoAction,
    l: &[Rat],
    len: usize,
) -> Result<Vec<BigInt>> {
    if model.kind() != ModelKind::Torus {
        return Err(Error::Invalid(
            "graded dimensions are computed on torus models".into(),
        ));
    }
    let d = model.d();
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return Ok(out);
    }
    out.push(BigInt::from(1));
    let mut cur = l.to_vec();
    let mut sum = cur.clone();
    for m in 1..len {
        if m > 1 {
            cur = auto.apply(&cur);
            for (s, c) in sum.iter_mut().zip(&cur) {
                *s += c;
            }
        }
        if model.torus_positivity(&sum)? != Positivity::Positive {
            return Err(Error::Invalid(format!(
                "orbit sum through step {} is not positive definite",
                m - 1
            )));
        }
        let vol = model.eval_power(&sum)?;
        let dim = vol / Rat::from(factorial(d));
        match dim.to_bigint() {
            Some(v) => out.push(v),
            None => {
                return Err(Error::Invalid(format!(
                    "graded dimension at step {m} is {dim}, not an integer"
                )))
            }
        }
    }
    Ok(out)
}

/// Least n <= cap with sum_{i=0}^n f^i L positive definite, on a torus
/// model. None when no prefix within the cap works.
pub fn f_ample_witness(
    model: &IntersectionModel,
    auto: &AutoAction,
    l: &[Rat],
    cap: u64,
) -> Result<Option<u64>> {
    if model.kind() != ModelKind::Torus {
        return Err(Error::Invalid(
            "ampleness witnesses are computed on torus models".into(),
        ));
    }
    let mut cur = l.to_vec();
    let mut sum = cur.clone();
    for n in 0..=cap {
        if n > 0 {
            cur = auto.apply(&cur);
            for (s, c) in sum.iter_mut().zip(&cur) {
                *s += c;
            }
        }
        if model.torus_positivity(&sum)? == Positivity::Positive {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// q(Delta_n, Delta_n) on a Fujiki model, as an exact polynomial. For a
/// quadratic-degree isometry this has degree 4 with leading coefficient
/// q(N omega, N omega)-independent top term coming from the cross pairing.
pub fn fujiki_q_delta(model: &IntersectionModel, auto: &AutoAction) -> Result<QPoly> {
    let data = model
        .fujiki_data()
        .ok_or_else(|| Error::Invalid("q(Delta, Delta) needs a Fujiki model".into()))?;
    let cert = auto.cert()?;
    let omega = model.omega();
    let mut acc = QPoly::zero();
    for j in 0..=cert.k {
        let cj = cert.n_power_class(omega, j);
        for l in 0..=cert.k {
            let cl = cert.n_power_class(omega, l);
            let q = data.pair(&cj, &cl);
            if q.is_zero() {
                continue;
            }
            let term = binomial_poly_shifted(j + 1) * binomial_poly_shifted(l + 1);
            acc = acc + term.scale(&q);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct DeglcEntry {
    /// Offsets from the corner: the entry observed is (d-i, d-j), 1-based.
    pub i: usize,
    pub j: usize,
    pub poly: QPoly,
    pub expected_degree: usize,
    pub expected_leading: Rat,
    pub degree_ok: bool,
    pub leading_ok: bool,
}

/// Entrywise growth profile of the orbit sum of the corner class b_dd under
/// the single unipotent Jordan block. Entry (d-i, d-j) grows with degree
/// i+j+1 and leading coefficient C(i+j, i) / (i+j+1)!.
pub fn deglc_profile(model: &IntersectionModel, auto: &AutoAction) -> Result<Vec<DeglcEntry>> {
    let data = model
        .torus_data()
        .ok_or_else(|| Error::Invalid("entry profile needs a torus model".into()))?;
    let d = data.dim;
    if d > 4 {
        return Err(Error::Invalid("entry profile supports d <= 4".into()));
    }
    if !crate::model::torus::is_single_jordan_block(&data.a) {
        return Err(Error::Invalid(
            "entry profile needs the single unipotent Jordan block".into(),
        ));
    }
    let cert = auto.cert()?;
    let seed = model.basis_class(model.h() - 1);
    // per-entry polynomials of Omega(n) = sum_q C(n+1, q+1) N^q(b_dd)
    let mut entry_polys = vec![QPoly::zero(); model.h()];
    for q in 0..=cert.k {
        let class = cert.n_power_class(&seed, q);
        let b = binomial_poly_shifted(q + 1);
        for (slot, coeff) in entry_polys.iter_mut().zip(&class) {
            if !coeff.is_zero() {
                *slot = slot.clone() + b.clone().scale(coeff);
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let idx = (d - 1 - i) * d + (d - 1 - j);
            let poly = entry_polys[idx].clone();
            let expected_degree = i + j + 1;
            let expected_leading =
                Rat::from(binom(i + j, i)) / Rat::from(factorial(i + j + 1));
            let degree_ok = poly.degree() == Some(expected_degree);
            let leading_ok = degree_ok && poly.leading() == Some(&expected_leading);
            out.push(DeglcEntry {
                i,
                j,
                poly,
                expected_degree,
                expected_leading,
                degree_ok,
                leading_ok,
            });
        }
    }
    Ok(out)
}
