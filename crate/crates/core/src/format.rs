//! JSON description of (quadratic) Lie superalgebras.
//!
//! ```json
//! {
//!   "name": "g",
//!   "basis": [{"label": "X", "parity": 0}, {"label": "Y", "parity": 1}],
//!   "brackets": [{"left": "Y", "right": "Y", "terms": [{"coeff": "1/2", "basis": "X"}]}],
//!   "form": [{"left": "X", "right": "X", "value": "1"}]
//! }
//! ```
//!
//! Basis references may be labels or zero-based indices; parities may be
//! `0`/`1` or `"even"`/`"odd"`. Omitted brackets are zero. Export always
//! writes labels, parities as integers, and only pairs `left <= right`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedBasis, LieSuperalgebra, Parity};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quadratic::{BilinearForm, QuadraticLieSuperalgebra};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParitySpec {
    Bit(u8),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub parity: ParitySpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub coeff: String,
    pub basis: BasisRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: BasisRef,
    pub right: BasisRef,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub left: BasisRef,
    pub right: BasisRef,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<FormEntry>>,
}

/// An imported algebra, with its form when the document has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Imported {
    Plain(LieSuperalgebra),
    Quadratic(QuadraticLieSuperalgebra),
}

impl Imported {
    pub fn algebra(&self) -> &LieSuperalgebra {
        match self {
            Imported::Plain(g) => g,
            Imported::Quadratic(q) => &q.algebra,
        }
    }

    pub fn quadratic(&self) -> Option<&QuadraticLieSuperalgebra> {
        match self {
            Imported::Plain(_) => None,
            Imported::Quadratic(q) => Some(q),
        }
    }
}

impl ParitySpec {
    fn resolve(&self) -> Result<Parity> {
        let p = match self {
            ParitySpec::Bit(b) => Parity::from_bit(*b),
            ParitySpec::Name(s) => match s.to_ascii_lowercase().as_str() {
                "0" | "even" => Some(Parity::Even),
                "1" | "odd" => Some(Parity::Odd),
                _ => None,
            },
        };
        p.ok_or_else(|| Error::Parse(format!("invalid parity {self:?}")))
    }
}

fn resolve_ref(r: &BasisRef, labels: &[String]) -> Result<usize> {
    match r {
        BasisRef::Index(i) if *i < labels.len() => Ok(*i),
        BasisRef::Index(i) => Err(Error::Parse(format!(
            "basis index {i} out of range for dimension {}",
            labels.len()
        ))),
        BasisRef::Label(l) => labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::Parse(format!("unknown basis label `{l}`"))),
    }
}

impl AlgebraDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed algebra JSON: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Builds the algebra. Document order is kept when it already lists even
    /// vectors first; otherwise the vectors are stably split by parity.
    pub fn build(&self) -> Result<Imported> {
        let mut doc_labels = Vec::with_capacity(self.basis.len());
        let mut doc_parity = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            doc_labels.push(b.label.clone());
            doc_parity.push(b.parity.resolve()?);
        }
        // Position of each document vector in the even-first basis.
        let mut order: Vec<usize> = (0..doc_labels.len()).collect();
        order.sort_by_key(|&i| doc_parity[i]);
        let mut new_pos = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_pos[old] = new;
        }
        let basis = GradedBasis::new(
            order.iter().map(|&i| doc_labels[i].clone()).collect(),
            order.iter().map(|&i| doc_parity[i]).collect(),
        )?;
        let parities = basis.parities().to_vec();
        let mut g = LieSuperalgebra::new(self.name.clone(), basis);

        // Brackets in stored orientation, to catch conflicting duplicates.
        let mut seen: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
        for entry in &self.brackets {
            let i = new_pos[resolve_ref(&entry.left, &doc_labels)?];
            let j = new_pos[resolve_ref(&entry.right, &doc_labels)?];
            let mut terms: BTreeMap<usize, Scalar> = BTreeMap::new();
            for t in &entry.terms {
                let k = new_pos[resolve_ref(&t.basis, &doc_labels)?];
                *terms.entry(k).or_insert_with(Scalar::zero) += scalar::parse(&t.coeff)?;
            }
            let flip = i > j;
            let neg = flip && !(parities[i].is_odd() && parities[j].is_odd());
            let key = if flip { (j, i) } else { (i, j) };
            let stored: Vec<(usize, Scalar)> = terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, if neg { -c } else { c }))
                .collect();
            if let Some(prev) = seen.get(&key) {
                if *prev != stored {
                    return Err(Error::InvalidInput(format!(
                        "conflicting brackets for [{}, {}]",
                        g.basis().label(key.0),
                        g.basis().label(key.1)
                    )));
                }
                continue;
            }
            g.set_bracket(key.0, key.1, &stored)?;
            seen.insert(key, stored);
        }

        let Some(form_entries) = &self.form else {
            return Ok(Imported::Plain(g));
        };
        let n = g.dim();
        let mut form = BilinearForm::zero(n);
        let mut set: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for entry in form_entries {
            let i = new_pos[resolve_ref(&entry.left, &doc_labels)?];
            let j = new_pos[resolve_ref(&entry.right, &doc_labels)?];
            let v = scalar::parse(&entry.value)?;
            let sign_flip = i > j && parities[i].is_odd() && parities[j].is_odd();
            let key = (i.min(j), i.max(j));
            let canon = if sign_flip { -v.clone() } else { v.clone() };
            if let Some(prev) = set.get(&key) {
                if *prev != canon {
                    return Err(Error::InvalidInput(format!(
                        "conflicting form values for ({}, {})",
                        g.basis().label(key.0),
                        g.basis().label(key.1)
                    )));
                }
                continue;
            }
            form.set(i, j, v, &parities);
            set.insert(key, canon);
        }
        Ok(Imported::Quadratic(QuadraticLieSuperalgebra::new(g, form)?))
    }

    pub fn from_algebra(g: &LieSuperalgebra) -> Self {
        let basis = g.basis();
        let label = |i: usize| BasisRef::Label(basis.label(i).to_string());
        AlgebraDoc {
            name: g.name().to_string(),
            basis: (0..g.dim())
                .map(|i| BasisEntry {
                    label: basis.label(i).to_string(),
                    parity: ParitySpec::Bit(basis.parity(i).bit()),
                })
                .collect(),
            brackets: g
                .stored_brackets()
                .map(|(&(i, j), v)| BracketEntry {
                    left: label(i),
                    right: label(j),
                    terms: v
                        .iter()
                        .map(|(&k, c)| TermEntry {
                            coeff: scalar::format(c),
                            basis: label(k),
                        })
                        .collect(),
                })
                .collect(),
            form: None,
        }
    }

    pub fn from_quadratic(q: &QuadraticLieSuperalgebra) -> Self {
        let mut doc = Self::from_algebra(&q.algebra);
        let basis = q.algebra.basis();
        let mut entries = Vec::new();
        for i in 0..q.dim() {
            for j in i..q.dim() {
                let v = q.form.entry(i, j);
                if !v.is_zero() {
                    entries.push(FormEntry {
                        left: BasisRef::Label(basis.label(i).to_string()),
                        right: BasisRef::Label(basis.label(j).to_string()),
                        value: scalar::format(v),
                    });
                }
            }
        }
        doc.form = Some(entries);
        doc
    }
}

pub fn import_algebra(text: &str) -> Result<Imported> {
    AlgebraDoc::from_json(text)?.build()
}

pub fn export_algebra(g: &LieSuperalgebra) -> Result<String> {
    AlgebraDoc::from_algebra(g).to_json()
}

pub fn export_quadratic(q: &QuadraticLieSuperalgebra) -> Result<String> {
    AlgebraDoc::from_quadratic(q).to_json()
}

/// A derivation file: `{"degree": 0, "matrix": [["1", "0"], ...]}`.
/// Entries may be rational strings or integers.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationDoc {
    #[serde(default)]
    pub degree: u8,
    pub matrix: Vec<Vec<serde_json::Value>>,
}

impl DerivationDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("malformed derivation JSON: {e}")))
    }

    pub fn parity(&self) -> Result<Parity> {
        Parity::from_bit(self.degree)
            .ok_or_else(|| Error::Parse(format!("invalid derivation degree {}", self.degree)))
    }

    pub fn matrix(&self) -> Result<Matrix> {
        let rows = self
            .matrix
            .iter()
            .map(|row| row.iter().map(parse_entry).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

fn parse_entry(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::String(s) => scalar::parse(s),
        serde_json::Value::Number(n) if n.is_i64() => Ok(scalar::int(n.as_i64().expect("i64"))),
        other => Err(Error::Parse(format!(
            "matrix entries must be integers or rational strings, got {other}"
        ))),
    }
}
