//! The free associative differential algebra on an ordered alphabet.
//!
//! Monomials are words in derivative letters `x^(n)`. They are ordered by
//! potential first (the polynomial in `t` whose `t^j` coefficient counts the
//! letters of order `j`) and then lexicographically, letter pairs compared by
//! `(order, generator)`. That order is the [`Ord`] impl of [`DiffMonomial`],
//! so the last key of a [`DiffPoly`] term map is its leading monomial.

use std::cmp::Ordering;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, SparseVec};
use crate::rational::{format_rational, int, Rational};

/// Index into an ordered alphabet; generators are ordered by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub u32);

/// Display names for generators. Ids without a name print as `g<id>`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    /// `x1, ..., xn`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        (0..self.names.len() as u32).map(Generator)
    }

    pub fn name(&self, g: Generator) -> String {
        self.names
            .get(g.0 as usize)
            .cloned()
            .unwrap_or_else(|| format!("g{}", g.0))
    }

    pub fn lookup(&self, name: &str) -> Option<Generator> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Generator(i as u32))
    }

    /// Returns the generator for `name`, appending it when absent.
    pub fn intern(&mut self, name: &str) -> Generator {
        match self.lookup(name) {
            Some(g) => g,
            None => {
                self.names.push(name.to_string());
                Generator(self.names.len() as u32 - 1)
            }
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// `d^order(gen)`. Field order gives the pair order: derivative order first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffLetter {
    pub order: u32,
    pub gen: Generator,
}

impl DiffLetter {
    pub fn new(gen: Generator, order: u32) -> Self {
        Self { order, gen }
    }

    pub fn weight(&self) -> i64 {
        self.order as i64 - 1
    }

    pub fn derivative(&self) -> Self {
        Self {
            order: self.order + 1,
            gen: self.gen,
        }
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let name = alphabet.name(self.gen);
        match self.order {
            0..=2 => format!("{name}{}", "'".repeat(self.order as usize)),
            n => format!("{name}^({n})"),
        }
    }
}

/// Polynomial in `t` with non-negative integer coefficients; `counts[j]` is
/// the coefficient of `t^j`. Trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Potential {
    counts: Vec<u64>,
}

impl Potential {
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `-N_0 + N_2 + 2 N_3 + ...`
    pub fn weight(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(j, &n)| (j as i64 - 1) * n as i64)
            .sum()
    }
}

impl Add for &Potential {
    type Output = Potential;
    fn add(self, rhs: &Potential) -> Potential {
        let len = self.counts.len().max(rhs.counts.len());
        let counts = (0..len)
            .map(|j| {
                self.counts.get(j).copied().unwrap_or(0) + rhs.counts.get(j).copied().unwrap_or(0)
            })
            .collect();
        Potential::from_counts(counts)
    }
}

impl Ord for Potential {
    /// Sign of the leading coefficient of `self - other`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.counts
            .len()
            .cmp(&other.counts.len())
            .then_with(|| self.counts.iter().rev().cmp(other.counts.iter().rev()))
    }
}

impl PartialOrd for Potential {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, &n) in self.counts.iter().enumerate().rev() {
            if n == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coeff = if n == 1 && j > 0 {
                String::new()
            } else {
                n.to_string()
            };
            match j {
                0 => write!(f, "{n}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{j}")?,
            }
        }
        Ok(())
    }
}

/// A word `x_1^(n_1) ... x_k^(n_k)`; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffMonomial {
    letters: Vec<DiffLetter>,
}

impl DiffMonomial {
    pub fn new(letters: Vec<DiffLetter>) -> Self {
        Self { letters }
    }

    pub fn unit() -> Self {
        Self::default()
    }

    pub fn letter(gen: Generator, order: u32) -> Self {
        Self {
            letters: vec![DiffLetter::new(gen, order)],
        }
    }

    /// Builds a word from `(generator id, order)` pairs.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(g, o)| DiffLetter::new(Generator(g), o))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[DiffLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &DiffMonomial) -> DiffMonomial {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        DiffMonomial { letters }
    }

    /// Subword `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> DiffMonomial {
        DiffMonomial {
            letters: self.letters[start..end].to_vec(),
        }
    }

    pub fn potential(&self) -> Potential {
        let max = self.max_order().map_or(0, |m| m as usize + 1);
        let mut counts = vec![0u64; max];
        for l in &self.letters {
            counts[l.order as usize] += 1;
        }
        Potential::from_counts(counts)
    }

    pub fn weight(&self) -> i64 {
        self.letters.iter().map(DiffLetter::weight).sum()
    }

    pub fn max_order(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.order).max()
    }

    pub fn max_generator(&self) -> Option<Generator> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Leibniz expansion of `d(self)`.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for i in 0..self.letters.len() {
            let mut letters = self.letters.clone();
            letters[i] = letters[i].derivative();
            out.add_term(DiffMonomial { letters }, Rational::one());
        }
        out
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| l.display(alphabet))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn potential_cmp(&self, other: &Self) -> Ordering {
        let top = self.max_order().max(other.max_order());
        let Some(top) = top else {
            return Ordering::Equal;
        };
        for j in (0..=top).rev() {
            let a = self.letters.iter().filter(|l| l.order == j).count();
            let b = other.letters.iter().filter(|l| l.order == j).count();
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }
}

impl Ord for DiffMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.potential_cmp(other)
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite rational combination of differential monomials. Zero coefficients
/// are purged eagerly so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: SparseVec<DiffMonomial>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(DiffMonomial::unit())
    }

    pub fn monomial(m: DiffMonomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: DiffMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (DiffMonomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)] // `is_zero` plays that role
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DiffMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &DiffMonomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &DiffMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_sparse(&self) -> &SparseVec<DiffMonomial> {
        &self.terms
    }

    pub fn into_sparse(self) -> SparseVec<DiffMonomial> {
        self.terms
    }

    pub fn add_term(&mut self, m: DiffMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &DiffPoly) {
        axpy(&mut self.terms, factor, &other.terms);
    }

    pub fn scale(&self, factor: &Rational) -> DiffPoly {
        if factor.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// The derivation `d`, extended linearly.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_scaled(c, &m.derive());
        }
        out
    }

    /// `d^n(self)`.
    pub fn derive_n(&self, n: u32) -> DiffPoly {
        (0..n).fold(self.clone(), |p, _| p.derive())
    }

    /// The `≪`-greatest monomial.
    pub fn leading_monomial(&self) -> Result<&DiffMonomial> {
        self.terms.keys().next_back().ok_or(Error::ZeroPolynomial)
    }

    /// Distinct weights of the monomials, ascending.
    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.terms.keys().map(DiffMonomial::weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// The common weight of all monomials, if there is one.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        match self.weights().as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_unit() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push(' ');
                }
                out.push_str(&m.display(alphabet));
            }
        }
        out
    }
}

impl From<DiffMonomial> for DiffPoly {
    fn from(m: DiffMonomial) -> Self {
        DiffPoly::monomial(m)
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.add_scaled(&int(-1), rhs);
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        self.scale(&int(-1))
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.multiply(b), ca * cb);
            }
        }
        out
    }
}

/// Sums a family of polynomials.
pub fn sum<'a>(polys: impl IntoIterator<Item = &'a DiffPoly>) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for p in polys {
        out.add_scaled(&Rational::one(), p);
    }
    out
}
