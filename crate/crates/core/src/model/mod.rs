//! Intersection models: a rational coordinate space V of dimension h
//! standing for H^{1,1}, a symmetric d-multilinear form I, a distinguished
//! positive class omega, and form-preserving automorphism actions.

pub mod file;
pub mod fujiki;
pub mod product;
pub mod torus;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::matrix::RatMatrix;
use crate::poly::QPoly;
use crate::rat::Rat;
use crate::spectral::{self, UnipotentCert};
use crate::{Error, Result};

/// Coordinates of a (1,1)-class in the model basis.
pub type ClassVec = Vec<Rat>;

pub fn class_is_zero(c: &[Rat]) -> bool {
    c.iter().all(Rat::is_zero)
}

pub fn class_add(a: &[Rat], b: &[Rat]) -> ClassVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn class_sub(a: &[Rat], b: &[Rat]) -> ClassVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn class_scale(a: &[Rat], r: &Rat) -> ClassVec {
    a.iter().map(|x| x * r).collect()
}

/// All weakly increasing index tuples of length `k` drawn from `0..n`.
pub(crate) fn sorted_multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    if n == 0 {
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        // advance the rightmost position that can still grow
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < n {
                let v = cur[i] + 1;
                for slot in cur.iter_mut().skip(i) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// In-place next lexicographic permutation; false when already the last.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Symmetric tensor of arity d over indices 0..h, stored on sorted
/// multisets with zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseTensor {
    d: usize,
    h: usize,
    entries: BTreeMap<Vec<usize>, Rat>,
}

impl SparseTensor {
    pub fn new(d: usize, h: usize) -> Self {
        SparseTensor {
            d,
            h,
            entries: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.entries.iter()
    }

    /// Add `val` at the multiset `idx` (any order); zero sums are dropped.
    pub fn add(&mut self, idx: &[usize], val: Rat) -> Result<()> {
        if idx.len() != self.d {
            return Err(Error::Invalid(format!(
                "tensor index arity {} != {}",
                idx.len(),
                self.d
            )));
        }
        if idx.iter().any(|&i| i >= self.h) {
            return Err(Error::Invalid(format!("tensor index out of range: {idx:?}")));
        }
        let mut key = idx.to_vec();
        key.sort_unstable();
        let slot = self.entries.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += val;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    pub fn get(&self, idx: &[usize]) -> Rat {
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    /// Full multilinear evaluation: for every stored multiset, sum the
    /// products over its distinct permutations.
    fn eval(&self, classes: &[&[Rat]]) -> Rat {
        let mut acc = Rat::zero();
        for (key, val) in &self.entries {
            let mut perm = key.clone();
            // key is sorted, so the permutation loop starts at the minimum
            loop {
                let mut term = val.clone();
                let mut zero = false;
                for (l, &i) in perm.iter().enumerate() {
                    let c = &classes[l][i];
                    if c.is_zero() {
                        zero = true;
                        break;
                    }
                    term *= c;
                }
                if !zero {
                    acc += term;
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Tensor,
    Torus,
    Fujiki,
    Product,
}

#[derive(Debug, Clone)]
pub(crate) enum Form {
    Tensor(SparseTensor),
    Torus(torus::TorusData),
    Fujiki(fujiki::FujikiData),
    Product(Box<product::ProductData>),
}

/// Exact positivity class of a symmetric coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Positivity {
    /// Positive definite: ample/Kähler role.
    Positive,
    /// Positive semidefinite with kernel: nef boundary.
    Semidefinite,
    /// Some negative direction.
    Indefinite,
}

#[derive(Debug, Clone)]
pub struct IntersectionModel {
    d: usize,
    h: usize,
    basis: Vec<String>,
    omega: ClassVec,
    geometric: bool,
    pub(crate) form: Form,
}

impl IntersectionModel {
    pub(crate) fn new(
        d: usize,
        h: usize,
        basis: Vec<String>,
        omega: ClassVec,
        geometric: bool,
        form: Form,
    ) -> Result<Self> {
        if d == 0 || h == 0 {
            return Err(Error::Invalid("model dimensions must be positive".into()));
        }
        if basis.len() != h {
            return Err(Error::Invalid(format!(
                "{} basis labels for h = {h}",
                basis.len()
            )));
        }
        if omega.len() != h {
            return Err(Error::Invalid(format!(
                "distinguished class has {} coordinates, expected {h}",
                omega.len()
            )));
        }
        let model = IntersectionModel {
            d,
            h,
            basis,
            omega,
            geometric,
            form,
        };
        let vol = model.eval_power(&model.omega.clone())?;
        if !vol.is_positive() {
            return Err(Error::Invalid(format!(
                "rejected: I(omega^d) = {vol} is not positive"
            )));
        }
        Ok(model)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn omega(&self) -> &ClassVec {
        &self.omega
    }

    pub fn is_geometric(&self) -> bool {
        self.geometric
    }

    pub fn kind(&self) -> ModelKind {
        match self.form {
            Form::Tensor(_) => ModelKind::Tensor,
            Form::Torus(_) => ModelKind::Torus,
            Form::Fujiki(_) => ModelKind::Fujiki,
            Form::Product(_) => ModelKind::Product,
        }
    }

    /// Whether the carrier space is all of H^{1,1}, so that the nilpotency
    /// degree of the action is reportable as the Jordan invariant. Product
    /// carriers omit the Künneth cross terms and refuse such queries.
    pub fn k_reportable(&self) -> bool {
        !matches!(self.form, Form::Product(_))
    }

    pub fn torus_data(&self) -> Option<&torus::TorusData> {
        match &self.form {
            Form::Torus(t) => Some(t),
            _ => None,
        }
    }

    pub fn fujiki_data(&self) -> Option<&fujiki::FujikiData> {
        match &self.form {
            Form::Fujiki(f) => Some(f),
            _ => None,
        }
    }

    pub fn product_data(&self) -> Option<&product::ProductData> {
        match &self.form {
            Form::Product(p) => Some(p),
            _ => None,
        }
    }

    pub fn basis_class(&self, i: usize) -> ClassVec {
        let mut v = vec![Rat::zero(); self.h];
        v[i] = Rat::one();
        v
    }

    fn check_arity(&self, classes: &[&[Rat]]) -> Result<()> {
        if classes.len() != self.d {
            return Err(Error::Invalid(format!(
                "I takes {} classes, got {}",
                self.d,
                classes.len()
            )));
        }
        if let Some(c) = classes.iter().find(|c| c.len() != self.h) {
            return Err(Error::Invalid(format!(
                "class has {} coordinates, expected {}",
                c.len(),
                self.h
            )));
        }
        Ok(())
    }

    /// The d-fold intersection number I(c_1, ..., c_d).
    pub fn eval_i(&self, classes: &[&[Rat]]) -> Result<Rat> {
        self.check_arity(classes)?;
        Ok(match &self.form {
            Form::Tensor(t) => t.eval(classes),
            Form::Torus(t) => t.eval(classes),
            Form::Fujiki(f) => f.eval(classes),
            Form::Product(p) => p.eval(classes)?,
        })
    }

    /// Convenience wrapper over owned classes.
    pub fn eval(&self, classes: &[ClassVec]) -> Result<Rat> {
        let refs: Vec<&[Rat]> = classes.iter().map(|c| c.as_slice()).collect();
        self.eval_i(&refs)
    }

    /// I(c, ..., c) through each kind's diagonal identity; agreement with
    /// the multilinear route is property-tested.
    pub fn eval_power(&self, c: &[Rat]) -> Result<Rat> {
        if c.len() != self.h {
            return Err(Error::Invalid(format!(
                "class has {} coordinates, expected {}",
                c.len(),
                self.h
            )));
        }
        Ok(match &self.form {
            Form::Tensor(t) => t.eval(&vec![c; self.d]),
            Form::Torus(t) => t.eval_power(c),
            Form::Fujiki(f) => f.eval_power(c),
            Form::Product(p) => p.eval_power(c)?,
        })
    }

    /// Export the form as an explicit symmetric tensor by evaluating it on
    /// every basis multiset. Intended for dual-path testing on small models.
    pub fn to_sparse_tensor(&self) -> Result<SparseTensor> {
        let count = sorted_multisets(self.h, self.d).len();
        if count > 250_000 {
            return Err(Error::Invalid(format!(
                "tensor export would need {count} entries"
            )));
        }
        let mut t = SparseTensor::new(self.d, self.h);
        for idx in sorted_multisets(self.h, self.d) {
            let classes: Vec<ClassVec> = idx.iter().map(|&i| self.basis_class(i)).collect();
            let v = self.eval(&classes)?;
            if !v.is_zero() {
                t.add(&idx, v)?;
            }
        }
        Ok(t)
    }

    /// Positivity classification of a class on a torus model.
    pub fn torus_positivity(&self, c: &[Rat]) -> Result<Positivity> {
        match &self.form {
            Form::Torus(t) => t.positivity(c),
            _ => Err(Error::Invalid(
                "positivity classification is only defined on torus models".into(),
            )),
        }
    }

    /// Structural validation of the model together with an action.
    pub fn validate(&self, auto: &AutoAction) -> ValidationReport {
        validate(self, auto)
    }
}

/// An automorphism action on the model's coordinate space, with cached
/// unipotent-reduction data.
#[derive(Debug)]
pub struct AutoAction {
    f: RatMatrix,
    f_inv: RatMatrix,
    cert: OnceLock<std::result::Result<UnipotentCert, QPoly>>,
}

impl Clone for AutoAction {
    fn clone(&self) -> Self {
        AutoAction {
            f: self.f.clone(),
            f_inv: self.f_inv.clone(),
            cert: OnceLock::new(),
        }
    }
}

impl AutoAction {
    pub fn new(f: RatMatrix) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::Invalid("action matrix must be square".into()));
        }
        let f_inv = f
            .inverse()
            .ok_or_else(|| Error::Invalid("action matrix is singular".into()))?;
        Ok(AutoAction {
            f,
            f_inv,
            cert: OnceLock::new(),
        })
    }

    pub fn h(&self) -> usize {
        self.f.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.f
    }

    pub fn inverse_matrix(&self) -> &RatMatrix {
        &self.f_inv
    }

    pub fn apply(&self, c: &[Rat]) -> ClassVec {
        self.f.mul_vec(c)
    }

    pub fn apply_inverse(&self, c: &[Rat]) -> ClassVec {
        self.f_inv.mul_vec(c)
    }

    /// The action of f^m (m may be negative).
    pub fn power_matrix(&self, m: i64) -> RatMatrix {
        if m >= 0 {
            self.f.pow(m as u64)
        } else {
            self.f_inv.pow(m.unsigned_abs())
        }
    }

    /// Quasi-unipotence certificate, computed once and cached.
    pub fn cert(&self) -> Result<&UnipotentCert> {
        let slot = self.cert.get_or_init(|| match spectral::certify(&self.f) {
            Ok(c) => Ok(c),
            Err(Error::NotQuasiUnipotent(w)) => Err(w),
            Err(e) => panic!("certification failed structurally: {e}"),
        });
        match slot {
            Ok(c) => Ok(c),
            Err(w) => Err(Error::NotQuasiUnipotent(w.clone())),
        }
    }

    pub fn is_quasi_unipotent(&self) -> bool {
        self.cert().is_ok()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: &str, pass: bool, witness: Option<String>) {
        self.checks.push(ValidationCheck {
            name: name.into(),
            pass,
            witness,
        });
    }
}

fn random_class(rng: &mut ChaCha8Rng, h: usize) -> ClassVec {
    (0..h)
        .map(|_| Rat::from_int(rng.random_range(-3i64..=3)))
        .collect()
}

fn fmt_multiset(idx: &[usize], basis: &[String]) -> String {
    idx.iter()
        .map(|&i| basis[i].as_str())
        .collect::<Vec<_>>()
        .join(" · ")
}

fn validate(model: &IntersectionModel, auto: &AutoAction) -> ValidationReport {
    let mut report = ValidationReport { checks: Vec::new() };
    let h = model.h();
    let d = model.d();

    if auto.h() != h {
        report.push(
            "arity",
            false,
            Some(format!("action is {}x{}, V has dim {h}", auto.h(), auto.h())),
        );
        return report;
    }
    report.push("arity", true, None);

    // Symmetry spot check for structural evaluators (tensor storage is
    // symmetric by construction).
    if !matches!(model.form, Form::Tensor(_)) {
        let mut rng = ChaCha8Rng::seed_from_u64(0x706c_6f76);
        let mut sym_ok = true;
        let mut witness = None;
        'sym: for _ in 0..3 {
            let classes: Vec<ClassVec> = (0..d).map(|_| random_class(&mut rng, h)).collect();
            let base = model.eval(&classes).expect("arity checked");
            for _ in 0..3.min(d) {
                let mut shuffled = classes.clone();
                for l in (1..d).rev() {
                    let j = rng.random_range(0..=l);
                    shuffled.swap(l, j);
                }
                let v = model.eval(&shuffled).expect("arity checked");
                if v != base {
                    sym_ok = false;
                    witness = Some(format!("permuted arguments gave {v} vs {base}"));
                    break 'sym;
                }
            }
        }
        report.push("symmetry", sym_ok, witness);
    }

    // Form preservation by F. Structural kinds carry an exact identity;
    // explicit tensors are checked on every basis multiset.
    match &model.form {
        Form::Torus(t) => {
            let det = t.a.det();
            let unimodular = det == Rat::one() || det == -Rat::one();
            report.push(
                "torus-det",
                unimodular,
                (!unimodular).then(|| format!("det = {det}")),
            );
            let at = t.a.transpose();
            let kron_ok = at.kron(&at) == *auto.matrix();
            report.push(
                "torus-action-shape",
                kron_ok,
                (!kron_ok).then(|| "action is not induced by the period matrix".into()),
            );
            // |det A| = 1 forces preservation (the top wedge rescales by
            // det(A)^2); sample a few multisets as a live cross-check.
            let mut rng = ChaCha8Rng::seed_from_u64(0x6b72_6f6e);
            let mut pass = unimodular && kron_ok;
            let mut witness = None;
            if pass {
                for _ in 0..24 {
                    let idx: Vec<usize> = (0..d).map(|_| rng.random_range(0..h)).collect();
                    if let Some(w) = preservation_witness(model, auto, &idx) {
                        pass = false;
                        witness = Some(w);
                        break;
                    }
                }
            }
            report.push("preservation", pass, witness);
        }
        Form::Fujiki(fj) => {
            let lhs = &(&auto.matrix().transpose() * &fj.q) * auto.matrix();
            let pass = lhs == fj.q;
            report.push(
                "preservation",
                pass,
                (!pass).then(|| "F^t Q F != Q".into()),
            );
        }
        Form::Product(p) => {
            // Block-diagonal action with preserving blocks preserves the
            // product form.
            let h1 = p.left.h();
            let mut blocks_ok = true;
            for i in 0..h {
                for j in 0..h {
                    if (i < h1) != (j < h1) && !auto.matrix().get(i, j).is_zero() {
                        blocks_ok = false;
                    }
                }
            }
            report.push(
                "product-blocks",
                blocks_ok,
                (!blocks_ok).then(|| "action mixes the two factors".into()),
            );
            if blocks_ok {
                let (a1, a2) = p.split_action(auto).expect("block sizes checked");
                let left = p.left.validate(&a1);
                let right = p.right.validate(&a2);
                let pass = left.all_pass() && right.all_pass();
                report.push(
                    "preservation",
                    pass,
                    (!pass).then(|| "a factor failed validation".into()),
                );
            }
        }
        Form::Tensor(_) => {
            let mut pass = true;
            let mut witness = None;
            for idx in sorted_multisets(h, d) {
                if let Some(w) = preservation_witness(model, auto, &idx) {
                    pass = false;
                    witness = Some(w);
                    break;
                }
            }
            report.push("preservation", pass, witness);
        }
    }

    match model.eval_power(model.omega()) {
        Ok(vol) => report.push(
            "volume",
            vol.is_positive(),
            (!vol.is_positive()).then(|| format!("I(omega^d) = {vol}")),
        ),
        Err(e) => report.push("volume", false, Some(e.to_string())),
    }

    report
}

/// Some(description) if I(F b_{i_1}, ..., F b_{i_d}) != I(b_{i_1}, ..., b_{i_d}).
fn preservation_witness(
    model: &IntersectionModel,
    auto: &AutoAction,
    idx: &[usize],
) -> Option<String> {
    let plain: Vec<ClassVec> = idx.iter().map(|&i| model.basis_class(i)).collect();
    let moved: Vec<ClassVec> = plain.iter().map(|c| auto.apply(c)).collect();
    let a = model.eval(&plain).expect("basis classes are well-formed");
    let b = model.eval(&moved).expect("basis classes are well-formed");
    (a != b).then(|| {
        format!(
            "I(F·) = {b} but I(·) = {a} on {}",
            fmt_multiset(idx, model.basis_labels())
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_enumeration_counts() {
        assert_eq!(sorted_multisets(3, 2).len(), 6);
        assert_eq!(sorted_multisets(4, 0).len(), 1);
        assert_eq!(sorted_multisets(1, 5).len(), 1);
        for w in sorted_multisets(4, 3).windows(2) {
            assert!(w[0] < w[1], "lexicographic order");
        }
    }

    #[test]
    fn tensor_eval_is_symmetric_expansion() {
        // d = 2, h = 2, I(e0, e1) = 1: evaluates as x0 y1 + x1 y0
        let mut t = SparseTensor::new(2, 2);
        t.add(&[1, 0], Rat::one()).unwrap();
        let x = vec![Rat::from_int(2), Rat::from_int(3)];
        let y = vec![Rat::from_int(5), Rat::from_int(7)];
        assert_eq!(
            t.eval(&[x.as_slice(), y.as_slice()]),
            Rat::from_int(2 * 7 + 3 * 5)
        );
    }

    #[test]
    fn next_permutation_visits_all() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        // multiset with repeats: 3 distinct arrangements
        let mut v = vec![0, 0, 1];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 3);
    }
}
