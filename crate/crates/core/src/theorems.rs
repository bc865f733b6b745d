//! Schur multipliers, capability, and the verification harness that checks the
//! tabulated dimensions against the engine.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, AlgebraSpec, Expected};
use crate::error::{Error, Result};
use crate::liealg::{self, LieAlgebra};
use crate::tensorcalc::{
    exact_sequence_audit, exterior_center_of, exterior_square, square_submodule, tensor_square, triple_exterior_recipe,
    triple_tensor_recipe, triple_tensor_structural,
};

fn require_class_two(alg: &LieAlgebra) -> Result<()> {
    match alg.nilpotency_class() {
        c if c <= 2 => Ok(()),
        class => Err(Error::ClassTooHigh { class }),
    }
}

/// `dim M(L)`: `n(n−1)/2` for abelian `L`, `dim L∧L − dim L²` in class 2.
pub fn schur_multiplier_dim(alg: &LieAlgebra) -> Result<usize> {
    require_class_two(alg)?;
    let n = alg.dim();
    if alg.is_abelian() {
        return Ok(n * n.saturating_sub(1) / 2);
    }
    Ok(exterior_square(alg)?.quotient_dim() - alg.derived_subalgebra().dim())
}

/// `L` is capable iff its exterior center vanishes.
pub fn is_capable(alg: &LieAlgebra) -> Result<bool> {
    require_class_two(alg)?;
    Ok(crate::tensorcalc::exterior_center(alg)?.is_zero())
}

/// A count or a flag; `Error` records a computation that did not finish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Count(usize),
    Flag(bool),
    Error(String),
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Count(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Flag(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Count(c) => write!(f, "{c}"),
            Value::Flag(b) => write!(f, "{b}"),
            Value::Error(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub claim_id: String,
    pub paper_ref: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl Entry {
    pub fn new(
        claim_id: impl Into<String>,
        reference: &str,
        expected: impl Into<Value>,
        computed: impl Into<Value>,
    ) -> Self {
        let expected = expected.into();
        let computed = computed.into();
        Entry {
            claim_id: claim_id.into(),
            paper_ref: reference.to_string(),
            pass: expected == computed,
            expected,
            computed,
        }
    }

    pub fn check<V: Into<Value>>(
        claim_id: impl Into<String>,
        reference: &str,
        expected: impl Into<Value>,
        computed: Result<V>,
    ) -> Self {
        match computed {
            Ok(v) => Entry::new(claim_id, reference, expected, v),
            Err(e) => Entry::new(claim_id, reference, expected, Value::Error(e.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub entries: Vec<Entry>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    entries: &'a [Entry],
    summary: Summary,
}

impl VerificationReport {
    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    pub fn summary(&self) -> Summary {
        let passed = self.entries.iter().filter(|e| e.pass).count();
        Summary {
            total: self.entries.len(),
            passed,
            failed: self.entries.len() - passed,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn render_text(&self) -> String {
        let width = self.entries.iter().map(|e| e.claim_id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{} {:width$}  expected {:>5}  computed {:>5}  {}\n",
                if e.pass { "PASS" } else { "FAIL" },
                e.claim_id,
                e.expected.to_string(),
                e.computed.to_string(),
                e.paper_ref,
            ));
        }
        let s = self.summary();
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            s.total, s.passed, s.failed
        ));
        out
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            entries: &self.entries,
            summary: self.summary(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

const HEIS_TENSOR2: &str = "tensor square of H(m)";
const HEIS_WEDGE2: &str = "exterior square of H(m)";
const HEIS_TENSOR3: &str = "triple tensor of H(m)";
const HEIS_WEDGE3: &str = "triple exterior of H(m)";

pub fn verify_heisenberg(m_max: usize) -> VerificationReport {
    let mut report = VerificationReport::default();
    for m in 1..=m_max {
        report.extend(heisenberg_row(m));
    }
    report
}

fn heisenberg_row(m: usize) -> VerificationReport {
    let mut report = VerificationReport::default();
    let id = |claim: &str| format!("H:{m}/{claim}");
    let exp = catalog::heisenberg_expected(m);
    let alg = match AlgebraSpec::Heisenberg(m).build() {
        Ok(a) => a,
        Err(e) => {
            report.push(Entry::check(id("build"), "Heisenberg algebra", true, Err::<bool, _>(e)));
            return report;
        }
    };
    report.push(Entry::check(
        id("tensor2"),
        HEIS_TENSOR2,
        exp.tensor2,
        tensor_square(&alg).map(|p| p.quotient_dim()),
    ));
    report.push(Entry::check(
        id("wedge2"),
        HEIS_WEDGE2,
        exp.wedge2,
        exterior_square(&alg).map(|p| p.quotient_dim()),
    ));
    report.push(Entry::check(
        id("tensor3.structural"),
        HEIS_TENSOR3,
        exp.tensor3,
        triple_tensor_structural(&alg).map(|p| p.quotient_dim()),
    ));
    report.push(Entry::check(
        id("tensor3.recipe"),
        HEIS_TENSOR3,
        exp.tensor3,
        triple_tensor_recipe(&alg),
    ));
    report.push(Entry::check(
        id("wedge3.recipe"),
        HEIS_WEDGE3,
        exp.wedge3,
        triple_exterior_recipe(&alg),
    ));
    report
}

/// Which family of the rank-two statements an algebra falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Branch {
    Capable,
    /// Not capable, `Z^∧ = H²`.
    CenterEqualsDerived,
    /// Not capable, `Z^∧ ≠ H²`.
    Other,
}

/// Branch predictions as functions of `n = dim H`, in the order
/// (⊗², ∧², ⊗³, ∧³, M).
pub fn rank2_formulas(branch: Rank2Branch, n: usize) -> Option<Expected> {
    let n = n as i64;
    let (t2, w2, t3, w3, schur) = match branch {
        Rank2Branch::Capable => {
            let row = catalog::capable_rank2_entries()
                .into_iter()
                .find(|e| e.build().map(|a| a.dim() as i64 == n).unwrap_or(false))?
                .expected?;
            return Some(row);
        }
        Rank2Branch::CenterEqualsDerived => (
            (n - 2).pow(2),
            (n - 3) * (n - 2) / 2,
            (n - 2).pow(3),
            (n - 2) * (n * n - 6 * n + 7) / 2,
            (n - 3) * (n - 2) / 2 - 2,
        ),
        Rank2Branch::Other => (
            (n - 2).pow(2) + 2,
            (n - 1) * (n - 4) / 2 + 3,
            (n * n - 4 * n + 6) * (n - 2),
            n * (n * n - 8 * n + 23) / 2 - 14,
            (n - 1) * (n - 4) / 2 + 1,
        ),
    };
    let c = |v: i64| usize::try_from(v).ok();
    Some(Expected {
        tensor2: c(t2)?,
        wedge2: c(w2)?,
        tensor3: c(t3)?,
        wedge3: c(w3)?,
        schur: c(schur)?,
        capable: branch == Rank2Branch::Capable,
    })
}

/// Computes the branch from the exterior center.
pub fn rank2_branch(alg: &LieAlgebra) -> Result<Rank2Branch> {
    match alg.generalized_heisenberg_rank() {
        Some(2) => {}
        other => return Err(Error::NotRank2(other)),
    }
    let center = exterior_center_of(alg, &exterior_square(alg)?)?;
    Ok(if center.is_zero() {
        Rank2Branch::Capable
    } else if &center == alg.derived_subalgebra().space() {
        Rank2Branch::CenterEqualsDerived
    } else {
        Rank2Branch::Other
    })
}

/// Checks a generalized Heisenberg algebra of rank two against the prediction
/// for its computed branch.
pub fn verify_rank2(name: &str, alg: &LieAlgebra) -> Result<VerificationReport> {
    let branch = rank2_branch(alg)?;
    let n = alg.dim();
    let id = |claim: &str| format!("{name}/rank2.{claim}");
    let mut report = VerificationReport::default();
    let Some(exp) = rank2_formulas(branch, n) else {
        report.push(Entry::new(
            id("capable-dimension"),
            "capable rank-2 algebras have dimension 5, 6 or 7",
            true,
            false,
        ));
        return Ok(report);
    };
    let reference = match branch {
        Rank2Branch::Capable => "capable rank-2 table",
        Rank2Branch::CenterEqualsDerived => "non-capable rank-2, exterior center equal to H²",
        Rank2Branch::Other => "non-capable rank-2, exterior center not H²",
    };
    if branch == Rank2Branch::Capable {
        report.push(Entry::new(
            id("capable-dimension"),
            "capable rank-2 algebras have dimension 5, 6 or 7",
            true,
            (5..=7).contains(&n),
        ));
    }
    report.push(Entry::check(
        id("tensor2"),
        reference,
        exp.tensor2,
        tensor_square(alg).map(|p| p.quotient_dim()),
    ));
    report.push(Entry::check(
        id("wedge2"),
        reference,
        exp.wedge2,
        exterior_square(alg).map(|p| p.quotient_dim()),
    ));
    report.push(Entry::check(
        id("schur"),
        reference,
        exp.schur,
        schur_multiplier_dim(alg),
    ));
    report.push(Entry::check(
        id("tensor3.structural"),
        reference,
        exp.tensor3,
        triple_tensor_structural(alg).map(|p| p.quotient_dim()),
    ));
    report.push(Entry::check(
        id("tensor3.recipe"),
        reference,
        exp.tensor3,
        triple_tensor_recipe(alg),
    ));
    report.push(Entry::check(
        id("wedge3.recipe"),
        reference,
        exp.wedge3,
        triple_exterior_recipe(alg),
    ));
    Ok(report)
}

/// `dim ⊗³L ≤ n(n−m)²`, and for `m = 1` equality exactly at `H(1)`.
pub fn verify_bound(name: &str, alg: &LieAlgebra) -> Result<VerificationReport> {
    require_class_two(alg)?;
    let n = alg.dim();
    let m = alg.derived_subalgebra().dim();
    let t3 = triple_tensor_structural(alg)?.quotient_dim();
    let bound = n * (n - m) * (n - m);
    let mut report = VerificationReport::default();
    report.push(Entry::new(
        format!("{name}/bound"),
        "dim ⊗³L ≤ n(n−m)²",
        true,
        t3 <= bound,
    ));
    if m == 1 {
        // a class-2 algebra of dimension 3 with one-dimensional L² is H(1)
        report.push(Entry::new(
            format!("{name}/bound.equality"),
            "equality for m = 1 exactly at H(1)",
            n == 3,
            t3 == bound,
        ));
    }
    Ok(report)
}

fn catalog_checks(entry: &catalog::CatalogEntry) -> VerificationReport {
    let name = entry.name();
    let id = |claim: &str| format!("{name}/{claim}");
    let mut report = VerificationReport::default();
    let alg = match entry.build() {
        Ok(a) => a,
        Err(e) => {
            report.push(Entry::check(
                id("validate"),
                "structure constants define a nilpotent Lie algebra",
                true,
                Err::<bool, _>(e),
            ));
            return report;
        }
    };
    report.push(Entry::check(
        id("validate"),
        "structure constants define a nilpotent Lie algebra",
        true,
        liealg::validate(alg.structure_constants()).map(|_| true),
    ));
    let decomposition = (|| -> Result<(usize, usize)> {
        let t = tensor_square(&alg)?;
        let w = exterior_square(&alg)?;
        let sq = square_submodule(&alg, &t)?;
        Ok((t.quotient_dim(), w.quotient_dim() + sq.dim()))
    })();
    match decomposition {
        Ok((t, ws)) => report.push(Entry::new(
            id("decomposition"),
            "⊗² = ∧² ⊕ □ at the level of dimensions",
            t,
            ws,
        )),
        Err(e) => report.push(Entry::check(
            id("decomposition"),
            "⊗² = ∧² ⊕ □",
            true,
            Err::<bool, _>(e),
        )),
    }
    report.push(Entry::check(
        id("lambda-image"),
        "λ(a⊗b) = [a,b] maps onto L²",
        true,
        tensor_square(&alg).map(|t| &t.lambda().image() == alg.derived_subalgebra().space()),
    ));
    if alg.nilpotency_class() > 2 {
        return report;
    }
    let m = alg.derived_subalgebra().dim();
    report.push(Entry::check(
        id("schur-decomposition"),
        "∧²L ≅ M(L) ⊕ L² for class ≤ 2",
        exterior_square(&alg).map(|w| w.quotient_dim()).unwrap_or(0),
        schur_multiplier_dim(&alg).map(|s| s + m),
    ));
    match entry.expected {
        Some(exp) => {
            report.push(Entry::check(
                id("schur"),
                "tabulated Schur multiplier",
                exp.schur,
                schur_multiplier_dim(&alg),
            ));
            report.push(Entry::check(
                id("capable"),
                "tabulated capability",
                exp.capable,
                is_capable(&alg),
            ));
        }
        None if alg.is_abelian() => {
            let n = alg.dim();
            report.push(Entry::check(
                id("schur"),
                "dim M(A(n)) = n(n−1)/2",
                n * n.saturating_sub(1) / 2,
                schur_multiplier_dim(&alg),
            ));
            report.push(Entry::check(
                id("capable"),
                "A(n) is capable for n ≥ 2",
                n >= 2,
                is_capable(&alg),
            ));
        }
        None => {}
    }
    match exact_sequence_audit(&alg) {
        Ok(audit) => {
            report.push(Entry::new(
                id("audit.gamma-in-phi"),
                "Im γ ⊆ Im φ̄",
                true,
                audit.gamma_in_phi,
            ));
            report.push(Entry::new(
                id("audit.exact"),
                "dim ⊗³L = dim ⊗³L^ab + dim Im φ̄",
                audit.tensor3,
                audit.abelianization_tensor3 + audit.image_phi,
            ));
        }
        Err(e) => report.push(Entry::check(
            id("audit"),
            "exact sequence audit",
            true,
            Err::<bool, _>(e),
        )),
    }
    report
}

enum Task {
    Catalog(catalog::CatalogEntry),
    Heisenberg(usize),
    Rank2(AlgebraSpec),
    Bound(AlgebraSpec),
}

impl Task {
    fn run(&self) -> VerificationReport {
        let guarded = |spec: &AlgebraSpec, f: &dyn Fn(&str, &LieAlgebra) -> Result<VerificationReport>| {
            let name = spec.to_string();
            match spec.build().and_then(|a| f(&name, &a)) {
                Ok(r) => r,
                Err(e) => VerificationReport {
                    entries: vec![Entry::check(name, "check completes", true, Err::<bool, _>(e))],
                },
            }
        };
        match self {
            Task::Catalog(entry) => catalog_checks(entry),
            Task::Heisenberg(m) => heisenberg_row(*m),
            Task::Rank2(spec) => guarded(spec, &verify_rank2),
            Task::Bound(spec) => guarded(spec, &verify_bound),
        }
    }
}

fn tasks() -> Vec<Task> {
    let entries = catalog::entries();
    let mut out: Vec<Task> = entries.iter().cloned().map(Task::Catalog).collect();
    out.extend((1..=4).map(Task::Heisenberg));
    for entry in &entries {
        let Ok(alg) = entry.build() else { continue };
        if alg.generalized_heisenberg_rank() == Some(2) {
            out.push(Task::Rank2(entry.spec.clone()));
        }
        if !alg.is_abelian() && alg.nilpotency_class() <= 2 {
            out.push(Task::Bound(entry.spec.clone()));
        }
    }
    for k in 1..=3 {
        for j in 1..=3 {
            out.push(Task::Bound(AlgebraSpec::Sum(
                Box::new(AlgebraSpec::Heisenberg(k)),
                Box::new(AlgebraSpec::Abelian(j)),
            )));
        }
    }
    out
}

/// Runs every check on `jobs` worker threads; entries keep a fixed order.
pub fn verify_paper(jobs: usize) -> VerificationReport {
    let tasks = tasks();
    let run = || tasks.par_iter().map(Task::run).collect::<Vec<_>>();
    let parts = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => tasks.iter().map(Task::run).collect(),
    };
    let mut report = VerificationReport::default();
    for p in parts {
        report.extend(p);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn build(spec: &str) -> LieAlgebra {
        spec.parse::<AlgebraSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_multiplier_dim(&LieAlgebra::abelian(4)).unwrap(), 6);
        assert_eq!(schur_multiplier_dim(&build("L5_8")).unwrap(), 6);
        assert_eq!(schur_multiplier_dim(&build("L6_22:0")).unwrap(), 8);
        assert_eq!(schur_multiplier_dim(&build("L6_22:1")).unwrap(), 8);
        assert_eq!(schur_multiplier_dim(&build("L1")).unwrap(), 9);
        assert_eq!(schur_multiplier_dim(&build("H:1")).unwrap(), 2);
    }

    #[test]
    fn schur_rejects_class_three() {
        let f = LieAlgebra::from_int_brackets(4, &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])]).unwrap();
        assert_eq!(schur_multiplier_dim(&f), Err(Error::ClassTooHigh { class: 3 }));
        assert_eq!(is_capable(&f), Err(Error::ClassTooHigh { class: 3 }));
    }

    #[test]
    fn capability_examples() {
        assert!(is_capable(&build("L6_7_2:0")).unwrap());
        assert!(!is_capable(&build("H:2")).unwrap());
        assert!(is_capable(&LieAlgebra::abelian(2)).unwrap());
        assert!(!is_capable(&LieAlgebra::abelian(1)).unwrap());
        assert!(is_capable(&build("H:1")).unwrap());
    }

    #[test]
    fn rank2_formulas_are_consistent() {
        for n in 8..20 {
            for branch in [Rank2Branch::CenterEqualsDerived, Rank2Branch::Other] {
                let e = rank2_formulas(branch, n).unwrap();
                assert_eq!(e.wedge2, e.schur + 2);
            }
        }
        let e = rank2_formulas(Rank2Branch::CenterEqualsDerived, 6).unwrap();
        assert_eq!((e.tensor2, e.wedge2, e.schur), (16, 6, 4));
        assert_eq!(rank2_formulas(Rank2Branch::Capable, 5).unwrap().tensor3, 42);
        assert!(rank2_formulas(Rank2Branch::Capable, 9).is_none());
    }

    #[test]
    fn rank2_branches() {
        assert_eq!(rank2_branch(&build("L5_8")).unwrap(), Rank2Branch::Capable);
        assert_eq!(
            rank2_branch(&build("sum(H:2,H:2)")).unwrap(),
            Rank2Branch::CenterEqualsDerived
        );
        assert_eq!(rank2_branch(&build("sum(H:2,H:1)")).unwrap(), Rank2Branch::Other);
        assert_eq!(rank2_branch(&build("H:2")), Err(Error::NotRank2(Some(1))));
    }

    #[test]
    fn rank2_report_rows() {
        let r = verify_rank2("L6_22:1", &build("L6_22:1")).unwrap();
        for claim in ["tensor2", "wedge2", "schur", "tensor3.recipe", "wedge3.recipe"] {
            let e = r.entries.iter().find(|e| e.claim_id.ends_with(claim)).unwrap();
            assert!(e.pass, "{e:?}");
        }
        let r = verify_rank2("sum(H:2,H:2)", &build("sum(H:2,H:2)")).unwrap();
        assert!(r.all_passed(), "{}", r.render_text());
    }

    #[test]
    fn heisenberg_report() {
        let r = verify_heisenberg(2);
        assert_eq!(r.entries.len(), 10);
        assert!(r.all_passed(), "{}", r.render_text());
    }

    #[test]
    fn bound_examples() {
        let r = verify_bound("H:1", &build("H:1")).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert!(r.all_passed());
        let r = verify_bound("L1", &build("L1")).unwrap();
        assert!(r.all_passed());
        let r = verify_bound("sum(H:1,A:1)", &build("sum(H:1,A:1)")).unwrap();
        assert!(r.all_passed(), "{}", r.render_text());
    }

    #[test]
    fn entry_pass_tracks_equality() {
        assert!(Entry::new("x", "r", 3usize, 3usize).pass);
        assert!(!Entry::new("x", "r", 3usize, true).pass);
        assert!(!Entry::check("x", "r", 3usize, Err::<usize, _>(Error::AuditFailure("x".into()))).pass);
    }

    #[test]
    fn renderings_agree_on_counts() {
        let mut r = verify_heisenberg(1);
        r.push(Entry::new("extra", "r", int(1) == int(2), true));
        let s = r.summary();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["summary"]["failed"], s.failed);
        assert_eq!(json["entries"].as_array().unwrap().len(), s.total);
        assert!(r.render_text().ends_with(&format!(
            "{} checks, {} passed, {} failed\n",
            s.total, s.passed, s.failed
        )));
    }
}
