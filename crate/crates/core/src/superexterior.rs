//! The cochain algebra `C(g) = Alt(g₀*) ⊗ Sym(g₁*)`.
//!
//! Evaluation convention: the monomial `α_{i1}∧…∧α_{ia} ⊗ β_{j1}⋯β_{jb}`
//! (evens strictly increasing, odds weakly increasing) takes the value
//! `Π mult(j)!` on its own canonical tuple `(e_{i1},…,e_{ia},f_{j1},…,f_{jb})`
//! and `0` on every other canonical tuple. A symmetric monomial thus acts as
//! the plain sum over permutations, without a `1/b!`. Reordering a tuple costs
//! a sign for every transposition that is not between two odd vectors.
//!
//! With this convention the product `(Ω⊗F)∧(Ω'⊗F') = (−1)^{f ω'} (Ω∧Ω')⊗FF'`
//! is the super-shuffle product of multilinear forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{GradedBasis, LieSuperalgebra, Parity};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quadratic::{DarbouxFrame, QuadraticLieSuperalgebra};
use crate::scalar::{self, Scalar};

/// `α_{even[0]}∧… ⊗ β_{odd[0]}⋯`. Indices are positions inside the even and
/// odd sub-bases respectively.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub even: Vec<u16>,
    pub odd: Vec<u16>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    /// Validates the canonical ordering.
    pub fn new(even: Vec<u16>, odd: Vec<u16>) -> Result<Self> {
        if even.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "alternating indices must be strictly increasing".into(),
            ));
        }
        if odd.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(
                "symmetric indices must be weakly increasing".into(),
            ));
        }
        Ok(Monomial { even, odd })
    }

    /// `(ω, f)`: alternating and symmetric degrees.
    pub fn degrees(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }

    pub fn total_degree(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn parity(&self) -> Parity {
        if self.odd.len() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `Π mult(j)!` over the symmetric part.
    pub fn symmetry_factor(&self) -> Scalar {
        let mut acc = Scalar::one();
        let mut run = 0;
        for (k, j) in self.odd.iter().enumerate() {
            run = if k > 0 && self.odd[k - 1] == *j { run + 1 } else { 1 };
            if run > 1 {
                acc *= scalar::int(run as i64);
            }
        }
        acc
    }

    /// Global basis indices of the canonical tuple.
    pub fn tuple(&self, even_dim: usize) -> Vec<usize> {
        self.even
            .iter()
            .map(|&i| i as usize)
            .chain(self.odd.iter().map(|&j| even_dim + j as usize))
            .collect()
    }
}

/// Sorts a tuple of global basis indices into canonical order.
/// Returns `None` when an even vector repeats (every alternating form vanishes),
/// otherwise the sign of the reordering and the matching monomial.
pub fn canonicalize(tuple: &[usize], even_dim: usize) -> Option<(bool, Monomial)> {
    let mut negative = false;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            let both_odd = tuple[i] >= even_dim && tuple[j] >= even_dim;
            if tuple[i] > tuple[j] && !both_odd {
                negative = !negative;
            }
        }
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for &t in tuple {
        if t < even_dim {
            even.push(t as u16);
        } else {
            odd.push((t - even_dim) as u16);
        }
    }
    even.sort_unstable();
    odd.sort_unstable();
    if even.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((negative, Monomial { even, odd }))
}

/// All monomials of alternating degree `a` and symmetric degree `b`, in
/// lexicographic order.
pub fn monomials_of_bidegree(shape: (usize, usize), a: usize, b: usize) -> Vec<Monomial> {
    let (m, q) = shape;
    let evens = subsets(m, a);
    let odds = if q == 0 && b > 0 { Vec::new() } else { multisets(q, b) };
    let mut out = Vec::with_capacity(evens.len() * odds.len());
    for e in &evens {
        for o in &odds {
            out.push(Monomial {
                even: e.clone(),
                odd: o.clone(),
            });
        }
    }
    out
}

/// Basis of `C^k`, ordered by alternating degree then lexicographically.
pub fn monomials_of_degree(shape: (usize, usize), k: usize) -> Vec<Monomial> {
    (0..=k.min(shape.0))
        .flat_map(|a| monomials_of_bidegree(shape, a, k - a))
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u16);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn multisets(n: usize, k: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u16);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Sparse linear combination of monomials over a basis of shape `(m, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    shape: (usize, usize),
    terms: BTreeMap<Monomial, Scalar>,
}

impl Cochain {
    pub fn zero(shape: (usize, usize)) -> Self {
        Cochain {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(shape: (usize, usize)) -> Self {
        Self::monomial(shape, Monomial::unit(), Scalar::one())
    }

    pub fn monomial(shape: (usize, usize), m: Monomial, c: Scalar) -> Self {
        let mut out = Self::zero(shape);
        out.add_term(m, c);
        out
    }

    /// The dual covector `e_i*` of a global basis index.
    pub fn dual(basis: &GradedBasis, i: usize) -> Self {
        let m = basis.even_dim();
        let mono = if i < m {
            Monomial {
                even: vec![i as u16],
                odd: vec![],
            }
        } else {
            Monomial {
                even: vec![],
                odd: vec![(i - m) as u16],
            }
        };
        Self::monomial(basis.shape(), mono, Scalar::one())
    }

    /// Builds from `(coefficient, global indices)` pairs; the indices are
    /// canonicalized with the reordering sign, so `dual(a) ∧ dual(b)` may be
    /// written `(1, [a, b])`.
    pub fn from_terms(shape: (usize, usize), terms: &[(Scalar, Vec<usize>)]) -> Result<Self> {
        let mut out = Self::zero(shape);
        for (c, idx) in terms {
            if idx.iter().any(|&i| i >= shape.0 + shape.1) {
                return Err(Error::InvalidInput(format!("index out of range in {idx:?}")));
            }
            if let Some((neg, mono)) = canonicalize(idx, shape.0) {
                out.add_term(mono, if neg { -c.clone() } else { c.clone() });
            }
        }
        Ok(out)
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_shape(&self, other: &Cochain) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::BasisMismatch {
                left: self.shape,
                right: other.shape,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        if s.is_zero() {
            return Cochain::zero(self.shape);
        }
        Cochain {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Distinct `(total degree, parity)` pairs present.
    pub fn bidegrees(&self) -> Vec<(usize, Parity)> {
        let mut v: Vec<_> = self
            .terms
            .keys()
            .map(|m| (m.total_degree(), m.parity()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// The component of total degree `k`.
    pub fn degree_part(&self, k: usize) -> Cochain {
        Cochain {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Value on a tuple of global basis indices.
    pub fn evaluate(&self, tuple: &[usize]) -> Scalar {
        match canonicalize(tuple, self.shape.0) {
            None => Scalar::zero(),
            Some((neg, mono)) => match self.terms.get(&mono) {
                None => Scalar::zero(),
                Some(c) => {
                    let v = c * mono.symmetry_factor();
                    if neg {
                        -v
                    } else {
                        v
                    }
                }
            },
        }
    }

    /// The degree-`k` cochain whose value on each canonical tuple is `f(tuple)`.
    pub fn from_evaluation(
        shape: (usize, usize),
        k: usize,
        mut f: impl FnMut(&[usize]) -> Scalar,
    ) -> Cochain {
        let mut out = Cochain::zero(shape);
        for mono in monomials_of_degree(shape, k) {
            let v = f(&mono.tuple(shape.0));
            if !v.is_zero() {
                let c = v / mono.symmetry_factor();
                out.add_term(mono, c);
            }
        }
        out
    }

    /// Super-exterior product, `(Ω⊗F)∧(Ω'⊗F') = (−1)^{f ω'} (Ω∧Ω')⊗FF'`.
    pub fn wedge(&self, other: &Cochain) -> Result<Cochain> {
        self.check_shape(other)?;
        let mut out = Cochain::zero(self.shape);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((neg, mono)) = wedge_monomials(m1, m2) {
                    let c = c1 * c2;
                    out.add_term(mono, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Contraction by the basis vector `u` (global index):
    /// `i_u(A)(X_1,…) = A(e_u, X_1,…)`.
    pub fn contract(&self, u: usize) -> Cochain {
        let m = self.shape.0;
        let mut out = Cochain::zero(self.shape);
        for (mono, c) in &self.terms {
            if let Some((neg, factor, res)) = contract_monomial(mono, u, m) {
                let v = c * factor;
                out.add_term(res, if neg { -v } else { v });
            }
        }
        out
    }

    /// `coeff * e(i1^…^ia) ⊗ s(j1 … jb)` with global indices, terms in
    /// monomial order joined by ` + `. The zero cochain renders as `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let m = self.shape.0;
        self.terms
            .iter()
            .map(|(mono, c)| {
                let e: Vec<String> = mono.even.iter().map(|i| i.to_string()).collect();
                let s: Vec<String> = mono
                    .odd
                    .iter()
                    .map(|j| (m + *j as usize).to_string())
                    .collect();
                format!("{} * e({}) ⊗ s({})", scalar::format(c), e.join("^"), s.join(" "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Inverse of [`render`](Self::render).
    pub fn parse(shape: (usize, usize), text: &str) -> Result<Cochain> {
        let text = text.trim();
        let mut out = Cochain::zero(shape);
        if text == "0" {
            return Ok(out);
        }
        let bad = |t: &str| Error::Parse(format!("malformed cochain term `{t}`"));
        for term in text.split(" + ") {
            let (coeff, rest) = term.split_once('*').ok_or_else(|| bad(term))?;
            let c = scalar::parse(coeff)?;
            let (e, s) = rest.split_once('⊗').ok_or_else(|| bad(term))?;
            let inner = |part: &str, tag: char| -> Result<String> {
                let part = part.trim();
                part.strip_prefix(tag)
                    .and_then(|p| p.strip_prefix('('))
                    .and_then(|p| p.strip_suffix(')'))
                    .map(str::to_string)
                    .ok_or_else(|| bad(term))
            };
            let parse_idx = |t: &str| -> Result<usize> {
                t.trim().parse::<usize>().map_err(|_| bad(term))
            };
            let e = inner(e, 'e')?;
            let s = inner(s, 's')?;
            let mut idx = Vec::new();
            for t in e.split('^').filter(|t| !t.trim().is_empty()) {
                let i = parse_idx(t)?;
                if i >= shape.0 {
                    return Err(bad(term));
                }
                idx.push(i);
            }
            for t in s.split_whitespace() {
                let j = parse_idx(t)?;
                if j < shape.0 || j >= shape.0 + shape.1 {
                    return Err(bad(term));
                }
                idx.push(j);
            }
            let mono = Monomial::new(
                idx.iter().filter(|&&i| i < shape.0).map(|&i| i as u16).collect(),
                idx.iter()
                    .filter(|&&i| i >= shape.0)
                    .map(|&i| (i - shape.0) as u16)
                    .collect(),
            )
            .map_err(|_| bad(term))?;
            out.add_term(mono, c);
        }
        Ok(out)
    }

    /// Human-readable form using basis labels, e.g. `2 Y0*∧X1* ⊗ (Y1*)^2`.
    pub fn display<'a>(&'a self, basis: &'a GradedBasis) -> impl fmt::Display + 'a {
        LabelledCochain { c: self, basis }
    }

    /// Inverse of [`display`](Self::display). Factors are dual labels `L*`
    /// (the `*` is optional), optionally `(L*)^n` or `L*^n`; `∧`, `⊗`, `.`
    /// and whitespace all separate factors. Each term is the product of its
    /// factors in the order written.
    pub fn parse_labelled(basis: &GradedBasis, text: &str) -> Result<Cochain> {
        let shape = basis.shape();
        let bad = |msg: String| Error::Parse(format!("in `{}`: {msg}", text.trim()));
        let tokens = tokenize(text).map_err(bad)?;
        let mut out = Cochain::zero(shape);
        let mut pos = 0;
        if tokens.is_empty() {
            return Err(bad("empty expression".into()));
        }
        while pos < tokens.len() {
            let mut coeff = Scalar::one();
            let mut seen_sign = false;
            while let Some(Tok::Sign(neg)) = tokens.get(pos) {
                if *neg {
                    coeff = -coeff;
                }
                seen_sign = true;
                pos += 1;
            }
            if pos > 0 && !seen_sign {
                return Err(bad("terms must be joined by + or -".into()));
            }
            // `display` writes the empty monomial as `1`, so `3 1` is `3`.
            while let Some(Tok::Number(c)) = tokens.get(pos) {
                coeff *= c;
                pos += 1;
            }
            let mut term = Cochain::unit(shape);
            loop {
                let (label, power) = match tokens.get(pos) {
                    Some(Tok::Label(l)) => {
                        pos += 1;
                        (l.clone(), take_power(&tokens, &mut pos))
                    }
                    Some(Tok::Open) => {
                        let Some(Tok::Label(l)) = tokens.get(pos + 1) else {
                            return Err(bad("expected a label after `(`".into()));
                        };
                        if tokens.get(pos + 2) != Some(&Tok::Close) {
                            return Err(bad("expected `)`".into()));
                        }
                        pos += 3;
                        (l.clone(), take_power(&tokens, &mut pos))
                    }
                    _ => break,
                };
                let name = label.strip_suffix('*').unwrap_or(&label);
                let i = basis
                    .index_of(name)
                    .ok_or_else(|| bad(format!("unknown basis label `{name}`")))?;
                let x = Cochain::dual(basis, i);
                for _ in 0..power {
                    term = term.wedge(&x)?;
                }
            }
            match tokens.get(pos) {
                None | Some(Tok::Sign(_)) => {}
                Some(t) => return Err(bad(format!("unexpected {t:?}"))),
            }
            out = out.add(&term.scale(&coeff))?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Sign(bool),
    Number(Scalar),
    Label(String),
    Open,
    Close,
    Power(usize),
}

fn take_power(tokens: &[Tok], pos: &mut usize) -> usize {
    match tokens.get(*pos) {
        Some(Tok::Power(n)) => {
            *pos += 1;
            *n
        }
        _ => 1,
    }
}

fn tokenize(text: &str) -> std::result::Result<Vec<Tok>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() || matches!(c, '∧' | '⊗' | '.' | '·') => i += 1,
            '+' | '-' | '−' => {
                out.push(Tok::Sign(c != '+'));
                i += 1;
            }
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            '^' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let n: String = chars[start..j].iter().collect();
                out.push(Tok::Power(n.parse().map_err(|_| "`^` needs a count".to_string())?));
                i = j;
            }
            _ if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '/') {
                    j += 1;
                }
                let lit: String = chars[i..j].iter().collect();
                out.push(Tok::Number(scalar::parse(&lit).map_err(|e| e.to_string())?));
                i = j;
            }
            _ if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '*' {
                    j += 1;
                }
                out.push(Tok::Label(chars[i..j].iter().collect()));
                i = j;
            }
            _ => return Err(format!("unexpected character `{c}`")),
        }
    }
    Ok(out)
}

struct LabelledCochain<'a> {
    c: &'a Cochain,
    basis: &'a GradedBasis,
}

impl fmt::Display for LabelledCochain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.terms.is_empty() {
            return f.write_str("0");
        }
        let m = self.basis.even_dim();
        for (n, (mono, c)) in self.c.terms.iter().enumerate() {
            let mut body = Vec::new();
            let alt: Vec<String> = mono
                .even
                .iter()
                .map(|&i| format!("{}*", self.basis.label(i as usize)))
                .collect();
            if !alt.is_empty() {
                body.push(alt.join("∧"));
            }
            let mut sym = Vec::new();
            let mut k = 0;
            while k < mono.odd.len() {
                let j = mono.odd[k];
                let run = mono.odd[k..].iter().take_while(|&&x| x == j).count();
                let l = self.basis.label(m + j as usize);
                sym.push(if run == 1 { format!("{l}*") } else { format!("({l}*)^{run}") });
                k += run;
            }
            if !sym.is_empty() {
                body.push(sym.join(""));
            }
            let body = if body.is_empty() { "1".to_string() } else { body.join(" ⊗ ") };
            let sep = if n == 0 {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sep}{body}")?;
            } else {
                write!(f, "{sep}{} {body}", scalar::format(&a))?;
            }
        }
        Ok(())
    }
}

/// Product of two monomials: `(negative, result)`, `None` when it vanishes.
pub fn wedge_monomials(a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    let mut even = a.even.clone();
    even.extend(&b.even);
    let mut negative = false;
    for i in 0..even.len() {
        for j in i + 1..even.len() {
            if even[i] == even[j] {
                return None;
            }
            if even[i] > even[j] {
                negative = !negative;
            }
        }
    }
    even.sort_unstable();
    if a.odd.len() % 2 == 1 && b.even.len() % 2 == 1 {
        negative = !negative;
    }
    let mut odd = a.odd.clone();
    odd.extend(&b.odd);
    odd.sort_unstable();
    Some((negative, Monomial { even, odd }))
}

/// `i_u` on a monomial: `(negative, factor, result)`.
fn contract_monomial(mono: &Monomial, u: usize, even_dim: usize) -> Option<(bool, Scalar, Monomial)> {
    if u < even_dim {
        let r = mono.even.iter().position(|&i| i as usize == u)?;
        let mut even = mono.even.clone();
        even.remove(r);
        Some((r % 2 == 1, Scalar::one(), Monomial { even, odd: mono.odd.clone() }))
    } else {
        let j = (u - even_dim) as u16;
        let mult = mono.odd.iter().filter(|&&x| x == j).count();
        if mult == 0 {
            return None;
        }
        let mut odd = mono.odd.clone();
        let pos = odd.iter().position(|&x| x == j).expect("multiplicity is positive");
        odd.remove(pos);
        Some((
            mono.even.len() % 2 == 1,
            scalar::int(mult as i64),
            Monomial { even: mono.even.clone(), odd },
        ))
    }
}

/// Coefficient of the monomial `target` (degree `k+1`) in `δA`, as a linear
/// functional on the degree-`k` monomial coefficients of `A`.
///
/// `δω(X_0,…,X_k) = Σ_{r<s} (−1)^{s + x_s(x_{r+1}+…+x_{s−1})}
///  ω(X_0,…,X_{r−1},[X_r,X_s],X_{r+1},…,X̂_s,…,X_k)`, evaluated on the
/// canonical tuple of `target`.
pub fn differential_row(g: &LieSuperalgebra, target: &Monomial) -> BTreeMap<Monomial, Scalar> {
    let m = g.basis().even_dim();
    let t = target.tuple(m);
    let odd: Vec<bool> = t.iter().map(|&i| g.parity(i).is_odd()).collect();
    let mut row: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    let mut tuple = Vec::with_capacity(t.len());
    for s in 1..t.len() {
        let mut between = 0usize;
        for r in (0..s).rev() {
            // `between` counts odd vectors strictly between r and s.
            let negative = (s + if odd[s] { between } else { 0 }) % 2 == 1;
            for (l, c) in g.bracket_basis(t[r], t[s]) {
                tuple.clear();
                tuple.extend_from_slice(&t[..r]);
                tuple.push(l);
                tuple.extend_from_slice(&t[r + 1..s]);
                tuple.extend_from_slice(&t[s + 1..]);
                if let Some((neg, mono)) = canonicalize(&tuple, m) {
                    let v = c * mono.symmetry_factor();
                    let v = if neg != negative { -v } else { v };
                    let e = row.entry(mono.clone()).or_insert_with(Scalar::zero);
                    *e += v;
                    if e.is_zero() {
                        row.remove(&mono);
                    }
                }
            }
            if odd[r] {
                between += 1;
            }
        }
    }
    let f = target.symmetry_factor();
    if !f.is_one() {
        for v in row.values_mut() {
            *v /= &f;
        }
    }
    row
}

/// `δA` from the defining alternating-sum formula.
pub fn differential_direct(g: &LieSuperalgebra, a: &Cochain) -> Result<Cochain> {
    let shape = g.basis().shape();
    if a.shape() != shape {
        return Err(Error::BasisMismatch {
            left: shape,
            right: a.shape(),
        });
    }
    let mut out = Cochain::zero(shape);
    let degrees: std::collections::BTreeSet<usize> =
        a.terms().keys().map(Monomial::total_degree).collect();
    for k in degrees {
        let part = a.degree_part(k);
        for target in monomials_of_degree(shape, k + 1) {
            let row = differential_row(g, &target);
            let v: Scalar = row
                .iter()
                .filter_map(|(mono, w)| part.terms().get(mono).map(|c| c * w))
                .sum();
            out.add_term(target, v);
        }
    }
    Ok(out)
}

/// `I(X, Y, Z) = B([X, Y], Z)`.
pub fn associated_three_form(q: &QuadraticLieSuperalgebra) -> Cochain {
    let g = &q.algebra;
    Cochain::from_evaluation(g.basis().shape(), 3, |t| {
        g.bracket_basis(t[0], t[1])
            .iter()
            .map(|(l, c)| c * q.form.entry(*l, t[2]))
            .sum()
    })
}

/// Coefficient data of the super Poisson bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    shape: (usize, usize),
    /// `B(Y^i, Y^j)` on the even part.
    even_metric: Matrix,
    /// `Σ_r (Y^r ⊗ X^r − X^r ⊗ Y^r)` on the odd part.
    odd_tensor: Matrix,
}

impl PoissonStructure {
    pub fn new(q: &QuadraticLieSuperalgebra, frame: &DarbouxFrame) -> Self {
        PoissonStructure {
            shape: q.algebra.basis().shape(),
            even_metric: frame.even_metric(&q.form),
            odd_tensor: frame.odd_poisson_tensor(),
        }
    }

    pub fn from_quadratic(q: &QuadraticLieSuperalgebra) -> Result<Self> {
        Ok(Self::new(q, &q.darboux_frame()?))
    }

    pub fn even_metric(&self) -> &Matrix {
        &self.even_metric
    }

    pub fn odd_tensor(&self) -> &Matrix {
        &self.odd_tensor
    }

    /// For `A = Ω⊗F` of degrees `(ω, f)`:
    /// `{A, A'} = (−1)^{ω+f+1} Σ_{ij} B(Y^i,Y^j) ι_{e_i}A ∧ ι_{e_j}A'
    ///          + (−1)^ω Σ_{kl} Π_{kl} ι_{f_k}A ∧ ι_{f_l}A'`,
    /// extended bilinearly.
    pub fn bracket(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        for c in [a, b] {
            if c.shape() != self.shape {
                return Err(Error::BasisMismatch {
                    left: self.shape,
                    right: c.shape(),
                });
            }
        }
        let (m, q) = self.shape;
        let mut out = Cochain::zero(self.shape);
        // Contractions of the right factor are shared by every left term.
        let right_even: Vec<Cochain> = (0..m).map(|j| b.contract(j)).collect();
        let right_odd: Vec<Cochain> = (0..q).map(|l| b.contract(m + l)).collect();
        for (mono, coef) in a.terms() {
            let single = Cochain::monomial(self.shape, mono.clone(), coef.clone());
            let (w, f) = mono.degrees();
            let even_neg = (w + f + 1) % 2 == 1;
            for i in 0..m {
                let left = single.contract(i);
                if left.is_zero() {
                    continue;
                }
                for (j, right) in right_even.iter().enumerate() {
                    let g = &self.even_metric[(i, j)];
                    if g.is_zero() || right.is_zero() {
                        continue;
                    }
                    let s = if even_neg { -g.clone() } else { g.clone() };
                    out = out.add(&left.wedge(right)?.scale(&s))?;
                }
            }
            let odd_neg = w % 2 == 1;
            for k in 0..q {
                let left = single.contract(m + k);
                if left.is_zero() {
                    continue;
                }
                for (l, right) in right_odd.iter().enumerate() {
                    let p = &self.odd_tensor[(k, l)];
                    if p.is_zero() || right.is_zero() {
                        continue;
                    }
                    let s = if odd_neg { -p.clone() } else { p.clone() };
                    out = out.add(&left.wedge(right)?.scale(&s))?;
                }
            }
        }
        Ok(out)
    }
}

/// `−{I, A}`.
pub fn differential_via_poisson(q: &QuadraticLieSuperalgebra, a: &Cochain) -> Result<Cochain> {
    let p = PoissonStructure::from_quadratic(q)?;
    let i = associated_three_form(q);
    Ok(p.bracket(&i, a)?.scale(&-Scalar::one()))
}
