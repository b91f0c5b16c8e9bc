//! Quasi-nef sequences and the induced filtration of V.
//!
//! For a sequence (M_1, ..., M_d) the spaces are
//!
//!   F_0 = { a : I(a, g) = 0 for every basis multiset g of size d-1 }
//!   F_i = { a : I(M_1, ..., M_i, a, g) = 0 for every g of size d-i-1 }
//!   F_d = V
//!
//! A jump happens at i <= d-1 when M_i itself satisfies the F_i condition;
//! then F'_i extends F_{i-1} by M_i, otherwise F'_i = F_{i-1}. The top
//! space F'_d is V, flagged as a jump when F_{d-1} is proper.
//!
//! The canonical sequence is (N^k w, N^{k-2} w, ..., N^2 w, w, ..., w) with
//! r = k/2 leading entries; the positions s_j where the odd orbit classes
//! N^{2j-1} w enter the filtration recover the Jordan data of the action.

use serde::Serialize;

use crate::matrix::{in_span, RatMatrix};
use crate::model::{
    class_is_zero, sorted_multisets, AutoAction, ClassVec, IntersectionModel, ModelKind,
    Positivity,
};
use crate::rat::Rat;
use crate::{Error, Result};

/// Jordan data is only meaningful when the carrier is all of H^{1,1}.
fn refuse_on_partial_carrier(model: &IntersectionModel) -> Result<()> {
    if !model.k_reportable() {
        return Err(Error::Invalid(
            "the Jordan invariant is not defined on a product carrier".into(),
        ));
    }
    Ok(())
}

/// True when I(fixed, g) = 0 for every basis multiset g filling the
/// remaining slots.
fn pairs_to_zero(model: &IntersectionModel, fixed: &[&[Rat]]) -> Result<bool> {
    let free = model.d() - fixed.len();
    for gamma in sorted_multisets(model.h(), free) {
        let holders: Vec<ClassVec> = gamma.iter().map(|&t| model.basis_class(t)).collect();
        let mut classes: Vec<&[Rat]> = fixed.to_vec();
        classes.extend(holders.iter().map(|c| c.as_slice()));
        if !model.eval_i(&classes)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of { a : I(fixed, a, g) = 0 for all basis multisets g } with one
/// free slot and the rest of the arity filled by g.
fn conditioned_nullspace(model: &IntersectionModel, fixed: &[&[Rat]]) -> Result<Vec<ClassVec>> {
    let h = model.h();
    let free = model.d() - fixed.len() - 1;
    let gammas = sorted_multisets(h, free);
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(gammas.len());
    for gamma in &gammas {
        let holders: Vec<ClassVec> = gamma.iter().map(|&t| model.basis_class(t)).collect();
        let mut row = Vec::with_capacity(h);
        for j in 0..h {
            let ej = model.basis_class(j);
            let mut classes: Vec<&[Rat]> = fixed.to_vec();
            classes.push(&ej);
            classes.extend(holders.iter().map(|c| c.as_slice()));
            row.push(model.eval_i(&classes)?);
        }
        rows.push(row);
    }
    let constraints = RatMatrix::from_rows(rows)?;
    let (_, basis) = constraints.rank_and_nullspace();
    Ok(basis)
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateEntry {
    pub name: String,
    #[serde(skip)]
    pub class: ClassVec,
    /// Exact F-invariance of the class itself.
    pub f_invariant: bool,
    /// Coefficient-matrix positivity on torus models.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positivity: Option<Positivity>,
}

/// Distinguished quasi-nef candidates attached to the action: the top
/// orbit classes N^k w, their two-sided versions, and the even ladder.
pub fn canonical_candidates(
    model: &IntersectionModel,
    auto: &AutoAction,
) -> Result<Vec<CandidateEntry>> {
    refuse_on_partial_carrier(model)?;
    let cert = auto.cert()?;
    let omega = model.omega();
    let k = cert.k;
    let mut out = Vec::new();
    if k == 0 {
        return Ok(out);
    }
    let mut push = |name: String, class: ClassVec| -> Result<()> {
        let moved = auto.apply(&class);
        let f_invariant = moved == class;
        let positivity = if model.kind() == ModelKind::Torus {
            Some(model.torus_positivity(&class)?)
        } else {
            None
        };
        out.push(CandidateEntry {
            name,
            class,
            f_invariant,
            positivity,
        });
        Ok(())
    };
    push(format!("n^{k} w"), cert.n_power_class(omega, k))?;
    push(format!("two-sided n_{k} w"), cert.n_two_sided_class(omega, k))?;
    if k >= 1 {
        push(
            format!("two-sided n_{} w", k - 1),
            cert.n_two_sided_class(omega, k - 1),
        )?;
    }
    let mut i = k.saturating_sub(2);
    while i >= 2 {
        push(format!("n^{i} w"), cert.n_power_class(omega, i))?;
        i -= 2;
    }
    Ok(out)
}

/// (N^k w, N^{k-2} w, ..., N^2 w, w, ..., w), length d. Needs k even and
/// r = k/2 <= d-1.
pub fn canonical_sequence(model: &IntersectionModel, auto: &AutoAction) -> Result<Vec<ClassVec>> {
    refuse_on_partial_carrier(model)?;
    let cert = auto.cert()?;
    let k = cert.k;
    let d = model.d();
    if k % 2 != 0 {
        return Err(Error::Invalid(format!(
            "canonical sequence needs an even Jordan invariant, got {k}"
        )));
    }
    let r = k / 2;
    if r > d - 1 && k > 0 {
        return Err(Error::Invalid(format!(
            "Jordan invariant {k} exceeds 2(d-1) = {}",
            2 * (d - 1)
        )));
    }
    let omega = model.omega();
    let mut seq = Vec::with_capacity(d);
    for j in 0..r {
        let class = cert.n_power_class(omega, k - 2 * j);
        if class_is_zero(&class) {
            return Err(Error::Integrity(format!(
                "orbit class at power {} vanished on the distinguished class",
                k - 2 * j
            )));
        }
        seq.push(class);
    }
    for _ in r..d {
        seq.push(omega.clone());
    }
    Ok(seq)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiNefPrefix {
    pub len: usize,
    /// Some complementary multiset pairs to a nonzero number.
    pub nonzero: bool,
    /// The product of the prefix is fixed by the action as a functional.
    pub invariant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiNefReport {
    pub prefixes: Vec<QuasiNefPrefix>,
    /// Torus proxy: coefficient-matrix positivity of each entry. Not part
    /// of the definition; a failure leaves the sequence unverified without
    /// rejecting it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positivity_proxy: Option<Vec<Positivity>>,
    pub verified: bool,
}

impl QuasiNefReport {
    /// The defining prefix conditions, without the positivity proxy. The
    /// filtration is meaningful exactly when these hold.
    pub fn prefixes_hold(&self) -> bool {
        self.prefixes.iter().all(|p| p.nonzero && p.invariant)
    }
}

/// Check a sequence for quasi-nefness: every prefix product must survive
/// against some complement and must be invariant under the action.
pub fn verify_quasi_nef(
    model: &IntersectionModel,
    auto: &AutoAction,
    seq: &[ClassVec],
) -> Result<QuasiNefReport> {
    let d = model.d();
    if seq.len() != d {
        return Err(Error::Invalid(format!(
            "sequence has {} entries for arity {d}",
            seq.len()
        )));
    }
    let mut prefixes = Vec::with_capacity(d);
    let mut all_ok = true;
    for i in 1..=d {
        let fixed: Vec<&[Rat]> = seq[..i].iter().map(|c| c.as_slice()).collect();
        let nonzero = !pairs_to_zero(model, &fixed)?;
        let moved: Vec<ClassVec> = seq[..i].iter().map(|c| auto.apply(c)).collect();
        let moved_refs: Vec<&[Rat]> = moved.iter().map(|c| c.as_slice()).collect();
        let mut invariant = true;
        'gamma: for gamma in sorted_multisets(model.h(), d - i) {
            let holders: Vec<ClassVec> = gamma.iter().map(|&t| model.basis_class(t)).collect();
            let mut lhs: Vec<&[Rat]> = moved_refs.clone();
            let mut rhs: Vec<&[Rat]> = fixed.clone();
            for c in &holders {
                lhs.push(c);
                rhs.push(c);
            }
            if model.eval_i(&lhs)? != model.eval_i(&rhs)? {
                invariant = false;
                break 'gamma;
            }
        }
        all_ok &= nonzero && invariant;
        prefixes.push(QuasiNefPrefix {
            len: i,
            nonzero,
            invariant,
        });
    }
    let positivity_proxy = if model.kind() == ModelKind::Torus {
        let mut tags = Vec::with_capacity(d);
        for c in seq {
            tags.push(model.torus_positivity(c)?);
        }
        Some(tags)
    } else {
        None
    };
    let proxy_ok = positivity_proxy
        .as_ref()
        .map(|tags| tags.iter().all(|t| *t != Positivity::Indefinite))
        .unwrap_or(true);
    Ok(QuasiNefReport {
        prefixes,
        positivity_proxy,
        verified: all_ok && proxy_ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationCore {
    /// dims of F_0 ..= F_d
    pub f_dims: Vec<usize>,
    /// dims of F'_1 ..= F'_d
    pub fprime_dims: Vec<usize>,
    /// i = 1 ..= d; the last flag records whether F_{d-1} is proper.
    pub jump_flags: Vec<bool>,
    pub f_bases: Vec<Vec<ClassVec>>,
    pub fprime_bases: Vec<Vec<ClassVec>>,
}

/// Filtration data of an arbitrary sequence.
pub fn filtration_over(model: &IntersectionModel, seq: &[ClassVec]) -> Result<FiltrationCore> {
    let d = model.d();
    let h = model.h();
    if seq.len() != d {
        return Err(Error::Invalid(format!(
            "sequence has {} entries for arity {d}",
            seq.len()
        )));
    }
    let mut f_bases: Vec<Vec<ClassVec>> = Vec::with_capacity(d + 1);
    f_bases.push(conditioned_nullspace(model, &[])?);
    for i in 1..=d - 1 {
        let fixed: Vec<&[Rat]> = seq[..i].iter().map(|c| c.as_slice()).collect();
        f_bases.push(conditioned_nullspace(model, &fixed)?);
    }
    f_bases.push((0..h).map(|j| model.basis_class(j)).collect());

    let mut jump_flags = Vec::with_capacity(d);
    let mut fprime_bases: Vec<Vec<ClassVec>> = Vec::with_capacity(d);
    for i in 1..=d {
        if i < d {
            let mut fixed: Vec<&[Rat]> = seq[..i].iter().map(|c| c.as_slice()).collect();
            fixed.push(&seq[i - 1]);
            let jump = pairs_to_zero(model, &fixed)?;
            jump_flags.push(jump);
            let mut basis = f_bases[i - 1].clone();
            if jump && !in_span(&basis, &seq[i - 1]) {
                basis.push(seq[i - 1].clone());
            }
            fprime_bases.push(basis);
        } else {
            jump_flags.push(f_bases[d - 1].len() < h);
            fprime_bases.push(f_bases[d].clone());
        }
    }
    Ok(FiltrationCore {
        f_dims: f_bases.iter().map(Vec::len).collect(),
        fprime_dims: fprime_bases.iter().map(Vec::len).collect(),
        jump_flags,
        f_bases,
        fprime_bases,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub r: usize,
    /// s_j = least i with N^{2j-1} w in F_i, j = 1 ..= r.
    pub s: Vec<usize>,
    pub core: FiltrationCore,
    /// Twice the number of jumps below the top step.
    pub k_from_jumps: usize,
    pub matches_k: bool,
    /// The inverse action enters the filtration at the same positions.
    pub inverse_consistent: bool,
}

/// Full filtration analysis over a verified sequence, with the Jordan
/// invariant re-derived from jump counts and entry positions. Inconsistent
/// memberships of the orbit powers are integrity errors.
pub fn filtration_spaces(
    model: &IntersectionModel,
    auto: &AutoAction,
    seq: &[ClassVec],
) -> Result<FiltrationReport> {
    refuse_on_partial_carrier(model)?;
    let cert = auto.cert()?;
    let k = cert.k;
    let d = model.d();
    let omega = model.omega();
    if k % 2 != 0 {
        return Err(Error::Invalid(format!(
            "entry positions need an even Jordan invariant, got {k}"
        )));
    }
    let r = k / 2;
    let core = filtration_over(model, seq)?;

    if core.f_dims[0] != 0 {
        return Err(Error::Integrity(format!(
            "the form is degenerate: {} null directions",
            core.f_dims[0]
        )));
    }

    let k_from_jumps = 2 * core.jump_flags[..d - 1].iter().filter(|&&j| j).count();
    let matches_k = k_from_jumps == k;

    let entry_position = |v: &[Rat]| -> Option<usize> {
        (0..=d).find(|&i| in_span(&core.f_bases[i], v))
    };

    let mut s = Vec::with_capacity(r);
    for j in 1..=r {
        let odd = cert.n_power_class(omega, 2 * j - 1);
        let even = cert.n_power_class(omega, 2 * j);
        let sj = entry_position(&odd).ok_or_else(|| {
            Error::Integrity(format!("orbit class at power {} never enters", 2 * j - 1))
        })?;
        if sj == 0 || sj > d - 1 {
            return Err(Error::Integrity(format!(
                "entry position {sj} for power {} is out of range",
                2 * j - 1
            )));
        }
        if in_span(&core.fprime_bases[sj - 1], &odd) {
            return Err(Error::Integrity(format!(
                "odd orbit class at power {} lies in the jump space",
                2 * j - 1
            )));
        }
        if !in_span(&core.fprime_bases[sj - 1], &even) {
            return Err(Error::Integrity(format!(
                "even orbit class at power {} misses the jump space",
                2 * j
            )));
        }
        if in_span(&core.f_bases[sj - 1], &even) {
            return Err(Error::Integrity(format!(
                "even orbit class at power {} enters too early",
                2 * j
            )));
        }
        s.push(sj);
    }
    for w in s.windows(2) {
        if w[0] <= w[1] {
            return Err(Error::Integrity(format!(
                "entry positions not strictly decreasing: {s:?}"
            )));
        }
    }

    let mut inverse_consistent = true;
    for j in 1..=r {
        let odd = cert.n_prime_power_class(omega, 2 * j - 1);
        if entry_position(&odd) != Some(s[j - 1]) {
            inverse_consistent = false;
        }
    }
    if !inverse_consistent {
        return Err(Error::Integrity(
            "inverse action enters the filtration at different positions".into(),
        ));
    }

    Ok(FiltrationReport {
        r,
        s,
        core,
        k_from_jumps,
        matches_k,
        inverse_consistent,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishingReport {
    /// k = 0 leaves nothing to check.
    pub applicable: bool,
    /// Two-sided top products vanish past the weight cutoff.
    pub weight_cutoff_ok: bool,
    /// (N^2 w)^{d-1} pairs to zero (k = 2, d >= 3 only).
    pub square_power_ok: Option<bool>,
    /// Largest m with (N^k w)^m not identically zero.
    pub m0: usize,
    /// Mixed products of the three top classes survive exactly to length m0.
    pub mixed_ok: bool,
    pub failures: Vec<String>,
}

impl VanishingReport {
    pub fn all_ok(&self) -> bool {
        self.weight_cutoff_ok && self.square_power_ok.unwrap_or(true) && self.mixed_ok
    }
}

/// Vanishing patterns forced on top products of orbit classes.
pub fn vanishing_diagnostics(
    model: &IntersectionModel,
    auto: &AutoAction,
) -> Result<VanishingReport> {
    refuse_on_partial_carrier(model)?;
    let cert = auto.cert()?;
    let k = cert.k;
    let d = model.d();
    let omega = model.omega();
    if k == 0 {
        return Ok(VanishingReport {
            applicable: false,
            weight_cutoff_ok: true,
            square_power_ok: None,
            m0: 0,
            mixed_ok: true,
            failures: Vec::new(),
        });
    }
    let mut failures = Vec::new();

    let top = cert.n_two_sided_class(omega, k);
    let next = cert.n_two_sided_class(omega, k.saturating_sub(1));

    // products of i copies of the weight-k class and j of the weight-(k-1)
    // class vanish once 2(i + j) > 2d - k
    let mut weight_cutoff_ok = true;
    for i in 0..=d {
        for j in 0..=(d - i) {
            if i + j == 0 || 2 * (i + j) <= 2 * d - k {
                continue;
            }
            let mut fixed: Vec<&[Rat]> = Vec::with_capacity(i + j);
            for _ in 0..i {
                fixed.push(&top);
            }
            for _ in 0..j {
                fixed.push(&next);
            }
            if !pairs_to_zero(model, &fixed)? {
                weight_cutoff_ok = false;
                failures.push(format!(
                    "two-sided product with multiplicities ({i}, {j}) does not vanish"
                ));
            }
        }
    }

    let square_power_ok = if k == 2 && d >= 3 {
        let n2 = cert.n_power_class(omega, 2);
        let fixed: Vec<&[Rat]> = (0..d - 1).map(|_| n2.as_slice()).collect();
        let ok = pairs_to_zero(model, &fixed)?;
        if !ok {
            failures.push("(N^2 w)^{d-1} does not vanish".into());
        }
        Some(ok)
    } else {
        None
    };

    let nk = cert.n_power_class(omega, k);
    let mut m0 = 0;
    for m in 1..=d {
        let fixed: Vec<&[Rat]> = (0..m).map(|_| nk.as_slice()).collect();
        if pairs_to_zero(model, &fixed)? {
            break;
        }
        m0 = m;
    }
    let trio: [&[Rat]; 3] = [&nk, &top, &next];
    let mut mixed_ok = true;
    for len in [m0, m0 + 1] {
        if len == 0 || len > d {
            continue;
        }
        let expect_zero = len > m0;
        for pick in sorted_multisets(3, len) {
            let fixed: Vec<&[Rat]> = pick.iter().map(|&t| trio[t]).collect();
            let vanishes = pairs_to_zero(model, &fixed)?;
            if vanishes != expect_zero {
                mixed_ok = false;
                failures.push(format!(
                    "mixed product of length {len} with picks {pick:?} {}",
                    if expect_zero {
                        "survives past the cutoff"
                    } else {
                        "vanishes early"
                    }
                ));
            }
        }
    }

    Ok(VanishingReport {
        applicable: true,
        weight_cutoff_ok,
        square_power_ok,
        m0,
        mixed_ok,
        failures,
    })
}
