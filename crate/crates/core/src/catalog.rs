//! Named algebras and the `.lie` structure-constant file format.
//!
//! File grammar (line based, UTF-8, indices 1-based):
//!
//! ```text
//! # comment
//! dim N
//! label i name
//! bracket i j -> k1:q1 k2:q2 ...
//! ```
//!
//! A `bracket` line sets `[e_i, e_j] = Σ q·e_k` and requires `i < j`; each
//! coefficient is an integer `p` or a fraction `p/q`. Unlisted brackets are zero.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{int, zero_vec, Scalar};
use crate::liealg::{LieAlgebra, StructureConstants};

/// Parses a rational literal `p` or `p/q`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    match text.split_once('/') {
        None => text.parse().ok().map(Scalar::from_integer),
        Some((p, q)) => {
            let p = p.parse().ok()?;
            let q: num_bigint::BigInt = q.parse().ok()?;
            (!q.is_zero()).then(|| Scalar::new(p, q))
        }
    }
}

/// Reads an algebra from `.lie` text.
pub fn parse(text: &str) -> Result<LieAlgebra> {
    let mut dim: Option<usize> = None;
    let mut sc: Option<StructureConstants> = None;
    let mut seen = std::collections::BTreeSet::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    let err = |line: usize, message: String| Error::Parse { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        match keyword {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line_no, "`dim` given twice".into()));
                }
                let n: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err(line_no, "expected `dim N`".into()))?;
                if words.next().is_some() {
                    return Err(err(line_no, "trailing input after `dim N`".into()));
                }
                dim = Some(n);
                sc = Some(StructureConstants::new(n));
                labels = vec![None; n];
            }
            "label" | "bracket" if dim.is_none() => {
                return Err(err(line_no, format!("`{keyword}` before `dim`")));
            }
            "label" => {
                let n = dim.unwrap_or_default();
                let i = parse_index(words.next(), n).ok_or_else(|| err(line_no, "bad label index".into()))?;
                let name = words.next().ok_or_else(|| err(line_no, "missing label name".into()))?;
                if words.next().is_some() {
                    return Err(err(line_no, "label names cannot contain spaces".into()));
                }
                if labels[i].replace(name.to_string()).is_some() {
                    return Err(err(line_no, format!("label {} given twice", i + 1)));
                }
            }
            "bracket" => {
                let n = dim.unwrap_or_default();
                let i = parse_index(words.next(), n).ok_or_else(|| err(line_no, "bad bracket index".into()))?;
                let j = parse_index(words.next(), n).ok_or_else(|| err(line_no, "bad bracket index".into()))?;
                if i >= j {
                    return Err(err(line_no, "bracket indices must satisfy i < j".into()));
                }
                if words.next() != Some("->") {
                    return Err(err(line_no, "expected `->`".into()));
                }
                if !seen.insert((i, j)) {
                    return Err(Error::DuplicateBracket {
                        line: line_no,
                        i: i + 1,
                        j: j + 1,
                    });
                }
                let mut value = zero_vec(n);
                let mut used = vec![false; n];
                for term in words {
                    let (k, q) = term
                        .split_once(':')
                        .ok_or_else(|| err(line_no, format!("term `{term}` is not `k:q`")))?;
                    let k = parse_index(Some(k), n).ok_or_else(|| err(line_no, format!("bad index in `{term}`")))?;
                    let q = parse_scalar(q).ok_or_else(|| err(line_no, format!("bad coefficient in `{term}`")))?;
                    if std::mem::replace(&mut used[k], true) {
                        return Err(err(line_no, format!("basis element {} repeated", k + 1)));
                    }
                    value[k] = q;
                }
                sc.as_mut().expect("dim seen").set(i, j, value)?;
            }
            other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let sc = sc.ok_or_else(|| err(0, "missing `dim` line".into()))?;
    let alg = LieAlgebra::new(sc)?;
    if labels.iter().all(Option::is_some) && !labels.is_empty() {
        return alg.with_labels(labels.into_iter().flatten().collect());
    }
    if labels.iter().any(Option::is_some) {
        let filled = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| format!("e{}", i + 1)))
            .collect();
        return alg.with_labels(filled);
    }
    Ok(alg)
}

fn parse_index(word: Option<&str>, dim: usize) -> Option<usize> {
    let i: usize = word?.parse().ok()?;
    (1..=dim).contains(&i).then(|| i - 1)
}

/// Canonical `.lie` serialization.
pub fn emit(alg: &LieAlgebra) -> String {
    let mut out = format!("dim {}\n", alg.dim());
    if let Some(labels) = alg.labels() {
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("label {} {}\n", i + 1, l));
        }
    }
    for (i, j, v) in alg.structure_constants().nonzero_brackets() {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(k, q)| format!("{}:{}", k + 1, q))
            .collect();
        out.push_str(&format!("bracket {} {} -> {}\n", i + 1, j + 1, terms.join(" ")));
    }
    out
}

/// Address of a catalog algebra, as written on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Abelian(usize),
    Heisenberg(usize),
    L5_8,
    L6_22(Scalar),
    L6_7_2(Scalar),
    L1,
    Sum(Box<AlgebraSpec>, Box<AlgebraSpec>),
}

type Terms = Vec<(usize, Scalar)>;

impl AlgebraSpec {
    pub fn build(&self) -> Result<LieAlgebra> {
        let x = |i: usize| i - 1;
        let brackets = |dim: usize, list: &[(usize, usize, Terms)]| -> Result<LieAlgebra> {
            let mut sc = StructureConstants::new(dim);
            for (i, j, terms) in list {
                let mut v = zero_vec(dim);
                for (k, c) in terms {
                    v[*k] += c;
                }
                sc.set(*i, *j, v)?;
            }
            LieAlgebra::new(sc)
        };
        let one = Scalar::one;
        match self {
            AlgebraSpec::Abelian(n) => Ok(LieAlgebra::abelian(*n)),
            AlgebraSpec::Heisenberg(m) => {
                let m = *m;
                if m == 0 {
                    return Err(Error::BadParameter("H:m needs m >= 1".into()));
                }
                // x_1..x_m, y_1..y_m, z
                let list: Vec<_> = (0..m).map(|i| (i, m + i, vec![(2 * m, one())])).collect();
                brackets(2 * m + 1, &list)
            }
            AlgebraSpec::L5_8 => brackets(
                5,
                &[(x(1), x(2), vec![(x(4), one())]), (x(1), x(3), vec![(x(5), one())])],
            ),
            AlgebraSpec::L6_22(eps) => brackets(
                6,
                &[
                    (x(1), x(2), vec![(x(5), one())]),
                    (x(1), x(3), vec![(x(6), one())]),
                    (x(2), x(4), vec![(x(6), eps.clone())]),
                    (x(3), x(4), vec![(x(5), one())]),
                ],
            ),
            AlgebraSpec::L6_7_2(eta) => brackets(
                6,
                &[
                    (x(1), x(2), vec![(x(5), one())]),
                    (x(1), x(3), vec![(x(6), one())]),
                    (x(2), x(4), vec![(x(6), eta.clone())]),
                    (x(3), x(4), vec![(x(5), one()), (x(6), one())]),
                ],
            ),
            AlgebraSpec::L1 => brackets(
                7,
                &[
                    (x(1), x(2), vec![(x(6), one())]),
                    (x(1), x(5), vec![(x(7), one())]),
                    (x(2), x(3), vec![(x(7), one())]),
                    (x(3), x(4), vec![(x(6), one())]),
                ],
            ),
            AlgebraSpec::Sum(a, b) => Ok(a.build()?.direct_sum(&b.build()?)),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Abelian(n) => write!(f, "A:{n}"),
            AlgebraSpec::Heisenberg(m) => write!(f, "H:{m}"),
            AlgebraSpec::L5_8 => write!(f, "L5_8"),
            AlgebraSpec::L6_22(e) => write!(f, "L6_22:{e}"),
            AlgebraSpec::L6_7_2(e) => write!(f, "L6_7_2:{e}"),
            AlgebraSpec::L1 => write!(f, "L1"),
            AlgebraSpec::Sum(a, b) => write!(f, "sum({a},{b})"),
        }
    }
}

/// Splits `a,b` at the top-level comma (outside parentheses).
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("sum(").and_then(|r| r.strip_suffix(')')) {
            let (a, b) = split_top_level(inner).ok_or_else(|| Error::BadArity {
                name: "sum".into(),
                expected: 2,
                found: 1,
            })?;
            return Ok(AlgebraSpec::Sum(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let params: Vec<&str> = parts.collect();
        let scalars = params
            .iter()
            .map(|p| parse_scalar(p).ok_or_else(|| Error::BadParameter(format!("`{p}` is not a rational number"))))
            .collect::<Result<Vec<_>>>()?;
        spec_from_parts(name, &scalars)
    }
}

fn spec_from_parts(name: &str, params: &[Scalar]) -> Result<AlgebraSpec> {
    let arity = |expected: usize| -> Result<()> {
        if params.len() != expected {
            return Err(Error::BadArity {
                name: name.to_string(),
                expected,
                found: params.len(),
            });
        }
        Ok(())
    };
    let count = |q: &Scalar| -> Result<usize> {
        if !q.is_integer() || q < &Scalar::zero() {
            return Err(Error::BadParameter(format!("`{q}` is not a non-negative integer")));
        }
        q.to_integer()
            .try_into()
            .map_err(|_| Error::BadParameter(format!("`{q}` is too large")))
    };
    // optional parameter, 0 when omitted
    let optional = || -> Result<Scalar> {
        match params {
            [] => Ok(Scalar::zero()),
            [p] => Ok(p.clone()),
            _ => Err(Error::BadArity {
                name: name.to_string(),
                expected: 1,
                found: params.len(),
            }),
        }
    };
    match name {
        "A" => {
            arity(1)?;
            Ok(AlgebraSpec::Abelian(count(&params[0])?))
        }
        "H" => {
            arity(1)?;
            Ok(AlgebraSpec::Heisenberg(count(&params[0])?))
        }
        "L5_8" => arity(0).map(|_| AlgebraSpec::L5_8),
        "L6_22" => optional().map(AlgebraSpec::L6_22),
        "L6_7_2" => optional().map(AlgebraSpec::L6_7_2),
        "L1" => arity(0).map(|_| AlgebraSpec::L1),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Builds a named catalog algebra: `A(n)`, `H(m)`, `L5_8`, `L6_22(ε)`, `L6_7_2(η)`, `L1`.
pub fn build(name: &str, params: &[Scalar]) -> Result<LieAlgebra> {
    spec_from_parts(name, params)?.build()
}

/// Reference dimensions attached to a catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub tensor2: usize,
    pub wedge2: usize,
    pub tensor3: usize,
    pub wedge3: usize,
    pub schur: usize,
    pub capable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: AlgebraSpec,
    pub expected: Option<Expected>,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn build(&self) -> Result<LieAlgebra> {
        self.spec.build()
    }
}

/// `H(m)` rows: ⊗², ∧², ⊗³, ∧³ as tabulated; the multiplier follows from ∧² − 1.
pub fn heisenberg_expected(m: usize) -> Expected {
    if m == 1 {
        return Expected {
            tensor2: 6,
            wedge2: 3,
            tensor3: 12,
            wedge3: 2,
            schur: 2,
            capable: true,
        };
    }
    Expected {
        tensor2: 4 * m * m,
        wedge2: 2 * m * m - m,
        tensor3: 8 * m * m * m,
        wedge3: 4 * m * m * m - 4 * m * m - m,
        schur: 2 * m * m - m - 1,
        capable: false,
    }
}

fn capable_row(tensor2: usize, wedge2: usize, tensor3: usize, wedge3: usize, schur: usize) -> Option<Expected> {
    Some(Expected {
        tensor2,
        wedge2,
        tensor3,
        wedge3,
        schur,
        capable: true,
    })
}

/// The rank-two capable algebras with their tabulated dimensions.
pub fn capable_rank2_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            spec: AlgebraSpec::L5_8,
            expected: capable_row(14, 8, 42, 12, 6),
        },
        CatalogEntry {
            spec: AlgebraSpec::L6_22(Scalar::zero()),
            expected: capable_row(20, 10, 80, 20, 8),
        },
        CatalogEntry {
            spec: AlgebraSpec::L6_22(Scalar::one()),
            expected: capable_row(20, 10, 80, 20, 8),
        },
        CatalogEntry {
            spec: AlgebraSpec::L6_7_2(Scalar::zero()),
            expected: capable_row(20, 10, 80, 20, 8),
        },
        CatalogEntry {
            spec: AlgebraSpec::L1,
            expected: capable_row(26, 11, 130, 39, 9),
        },
    ]
}

/// Every built-in entry, in a fixed order: abelian, Heisenberg, the capable
/// rank-two algebras, then sums of Heisenberg algebras.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (1..=4)
        .map(|n| CatalogEntry {
            spec: AlgebraSpec::Abelian(n),
            expected: None,
        })
        .collect();
    out.extend((1..=4).map(|m| CatalogEntry {
        spec: AlgebraSpec::Heisenberg(m),
        expected: Some(heisenberg_expected(m)),
    }));
    out.extend(capable_rank2_entries());
    for (a, b) in [(1, 1), (2, 1), (2, 2)] {
        out.push(CatalogEntry {
            spec: AlgebraSpec::Sum(
                Box::new(AlgebraSpec::Heisenberg(a)),
                Box::new(AlgebraSpec::Heisenberg(b)),
            ),
            expected: None,
        });
    }
    out
}

/// Scalar literal helper for callers building parameter lists.
pub fn param(v: i64) -> Scalar {
    int(v)
}
