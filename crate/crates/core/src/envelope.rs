//! The universal enveloping differential associative algebra of a
//! finite-dimensional algebra with products `≺`, `≻`, presented by the
//! weight-homogeneous rewriting rules
//!
//! ```text
//! R_n(x, y):  x y^(n)  ->  (x≺y)^(n-1) - Σ_{s=1}^{n-1} C(n-1, s) x^(s) y^(n-s)
//! L_n(x, y):  x^(n) y  ->  (x≻y)^(n-1) - Σ_{s=1}^{n-1} C(n-1, s) x^(n-s) y^(s)
//! ```
//!
//! over the basis letters of the algebra. A monomial is terminal iff it has
//! no order-0 letter next to a letter of positive order. Confluence of the
//! weight −1 sector, and thus the embedding of the algebra into its
//! envelope, is checked empirically on bounded word sets by comparing
//! normal forms under several rewriting strategies.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::enumerate_weight_minus1;
use crate::diffalg::{Alphabet, DiffLetter, DiffMonomial, DiffPoly, Generator};
use crate::error::{Error, Result};
use crate::fdalgebra::{unit_vector, DasAlgebra, Vector};
use crate::rational::{binomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleKind {
    /// Principal word `x y^(n)`.
    R,
    /// Principal word `x^(n) y`.
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleKey {
    pub kind: RuleKind,
    pub n: u32,
    pub x: Generator,
    pub y: Generator,
}

impl RuleKey {
    pub fn principal_word(&self) -> DiffMonomial {
        let (ox, oy) = match self.kind {
            RuleKind::R => (0, self.n),
            RuleKind::L => (self.n, 0),
        };
        DiffMonomial::new(vec![
            DiffLetter::new(self.x, ox),
            DiffLetter::new(self.y, oy),
        ])
    }

    pub fn label(&self, alphabet: &Alphabet) -> String {
        format!(
            "{:?}_{}({}, {})",
            self.kind,
            self.n,
            alphabet.name(self.x),
            alphabet.name(self.y)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub key: RuleKey,
    /// The lower part that replaces the principal word.
    pub rhs: DiffPoly,
}

impl RewriteRule {
    pub fn lhs(&self) -> DiffMonomial {
        self.key.principal_word()
    }

    /// The relation `lhs - rhs` itself.
    pub fn relation(&self) -> DiffPoly {
        &DiffPoly::monomial(self.lhs()) - &self.rhs
    }
}

/// Occurrence of a principal word at `position` (its first letter) in `monomial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redex {
    pub monomial: DiffMonomial,
    pub position: usize,
    pub key: RuleKey,
}

/// Every adjacent pair of an order-0 letter and a letter of positive order,
/// leftmost first.
pub fn find_redexes(u: &DiffMonomial) -> Vec<Redex> {
    let letters = u.letters();
    let mut out = Vec::new();
    for (i, pair) in letters.windows(2).enumerate() {
        if let Some(key) = redex_key(pair[0], pair[1]) {
            out.push(Redex {
                monomial: u.clone(),
                position: i,
                key,
            });
        }
    }
    out
}

fn redex_key(a: DiffLetter, b: DiffLetter) -> Option<RuleKey> {
    match (a.order, b.order) {
        (0, n) if n > 0 => Some(RuleKey {
            kind: RuleKind::R,
            n,
            x: a.gen,
            y: b.gen,
        }),
        (n, 0) if n > 0 => Some(RuleKey {
            kind: RuleKind::L,
            n,
            x: a.gen,
            y: b.gen,
        }),
        _ => None,
    }
}

fn leftmost_redex(u: &DiffMonomial) -> Option<(usize, RuleKey)> {
    u.letters()
        .windows(2)
        .enumerate()
        .find_map(|(i, p)| redex_key(p[0], p[1]).map(|k| (i, k)))
}

pub fn is_terminal(u: &DiffMonomial) -> bool {
    leftmost_redex(u).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Rewrite the `≪`-greatest reducible monomial at its leftmost redex.
    Deterministic,
    /// Uniformly random choice among all redexes of all monomials.
    Seeded(u64),
}

/// Weight sectors with their terminal shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// Weight −1: linear forms in the basis letters.
    MinusOne,
    /// Weight `-m`, `m > 1`: words of `m` order-0 letters.
    Negative(u32),
    /// Weight 0: words in first derivatives.
    Zero,
    /// Positive weight: no order-0 letters.
    Positive,
}

impl Sector {
    pub fn of_weight(w: i64) -> Self {
        match w {
            -1 => Sector::MinusOne,
            w if w < -1 => Sector::Negative((-w) as u32),
            0 => Sector::Zero,
            _ => Sector::Positive,
        }
    }

    pub fn admits(&self, u: &DiffMonomial) -> bool {
        let letters = u.letters();
        match self {
            Sector::MinusOne => letters.len() == 1 && letters[0].order == 0,
            Sector::Negative(m) => {
                letters.len() == *m as usize && letters.iter().all(|l| l.order == 0)
            }
            Sector::Zero => letters.iter().all(|l| l.order == 1),
            Sector::Positive => letters.iter().all(|l| l.order > 0),
        }
    }
}

/// Whether every monomial of `f` has the terminal shape of `sector`.
pub fn check_sector_shape(f: &DiffPoly, sector: Sector) -> bool {
    f.monomials().all(|u| sector.admits(u))
}

/// Rewriting engine over a fixed algebra. Rules and deterministic normal
/// forms of monomials are memoized in write-once concurrent maps.
pub struct Envelope {
    algebra: DasAlgebra,
    alphabet: Alphabet,
    rules: RwLock<HashMap<RuleKey, Arc<RewriteRule>>>,
    normal_forms: RwLock<HashMap<DiffMonomial, Arc<DiffPoly>>>,
    step_limit: Option<usize>,
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope")
            .field("dim", &self.algebra.dim())
            .finish_non_exhaustive()
    }
}

impl Envelope {
    /// Does not validate the algebra, so invalid algebras can be probed.
    pub fn new(algebra: DasAlgebra) -> Self {
        let alphabet = algebra.alphabet();
        Self {
            algebra,
            alphabet,
            rules: RwLock::new(HashMap::new()),
            normal_forms: RwLock::new(HashMap::new()),
            step_limit: None,
        }
    }

    /// Overrides the per-call step ceiling.
    pub fn with_step_limit(mut self, limit: usize) -> Self {
        self.step_limit = Some(limit);
        self
    }

    pub fn algebra(&self) -> &DasAlgebra {
        &self.algebra
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// A basis element `e_i` as a letter of order 0.
    pub fn letter(&self, i: usize) -> DiffMonomial {
        DiffMonomial::letter(Generator(i as u32), 0)
    }

    /// Linear form `Σ v_i e_i`.
    pub fn embed_vector(&self, v: &[Rational]) -> DiffPoly {
        DiffPoly::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, c)| (self.letter(i), c.clone())),
        )
    }

    /// Coordinates of a linear form in the basis letters, if it is one.
    pub fn as_vector(&self, f: &DiffPoly) -> Option<Vector> {
        let mut v = vec![Rational::zero(); self.algebra.dim()];
        for (u, c) in f.terms() {
            match u.letters() {
                [l] if l.order == 0 && (l.gen.0 as usize) < v.len() => {
                    v[l.gen.0 as usize] = c.clone()
                }
                _ => return None,
            }
        }
        Some(v)
    }

    pub fn instantiate_rule(
        &self,
        kind: RuleKind,
        n: u32,
        x: usize,
        y: usize,
    ) -> Result<Arc<RewriteRule>> {
        let dim = self.algebra.dim();
        if n == 0 {
            return Err(Error::ZeroOrderRule);
        }
        for i in [x, y] {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
        }
        let key = RuleKey {
            kind,
            n,
            x: Generator(x as u32),
            y: Generator(y as u32),
        };
        Ok(self.rule(key))
    }

    fn rule(&self, key: RuleKey) -> Arc<RewriteRule> {
        if let Some(r) = self.rules.read().expect("rule memo poisoned").get(&key) {
            return r.clone();
        }
        let built = Arc::new(self.build_rule(key));
        self.rules
            .write()
            .expect("rule memo poisoned")
            .entry(key)
            .or_insert(built)
            .clone()
    }

    fn build_rule(&self, key: RuleKey) -> RewriteRule {
        let (x, y) = (key.x.0 as usize, key.y.0 as usize);
        let n = key.n;
        let product = match key.kind {
            RuleKind::R => self.algebra.prec_basis(x, y),
            RuleKind::L => self.algebra.succ_basis(x, y),
        };
        let mut rhs = DiffPoly::zero();
        for (k, c) in product.iter().enumerate() {
            rhs.add_term(DiffMonomial::letter(Generator(k as u32), n - 1), c.clone());
        }
        for s in 1..n {
            let (ox, oy) = match key.kind {
                RuleKind::R => (s, n - s),
                RuleKind::L => (n - s, s),
            };
            let word =
                DiffMonomial::new(vec![DiffLetter::new(key.x, ox), DiffLetter::new(key.y, oy)]);
            rhs.add_term(word, -binomial(n - 1, s));
        }
        RewriteRule { key, rhs }
    }

    /// Replaces the principal word at `position` of `u` by the rule's rhs.
    fn rewrite_monomial(&self, u: &DiffMonomial, position: usize, key: RuleKey) -> DiffPoly {
        let rule = self.rule(key);
        let prefix = u.slice(0, position);
        let suffix = u.slice(position + 2, u.len());
        DiffPoly::from_terms(
            rule.rhs
                .terms()
                .map(|(m, c)| (prefix.multiply(m).multiply(&suffix), c.clone())),
        )
    }

    /// One edge of the rewriting graph.
    pub fn rewrite_step(&self, f: &DiffPoly, redex: &Redex) -> Result<DiffPoly> {
        let c = f.coefficient(&redex.monomial);
        let letters = redex.monomial.letters();
        let matches = redex.position + 1 < letters.len()
            && redex_key(letters[redex.position], letters[redex.position + 1]) == Some(redex.key);
        if c.is_zero() || !matches {
            return Err(Error::StaleRedex);
        }
        let mut out = f.clone();
        out.add_term(redex.monomial.clone(), -c.clone());
        out.add_scaled(
            &c,
            &self.rewrite_monomial(&redex.monomial, redex.position, redex.key),
        );
        Ok(out)
    }

    /// Ceiling on rewrite steps: 64 times the number of words within the
    /// length, order and alphabet bounds of `f`.
    fn step_ceiling(&self, f: &DiffPoly) -> usize {
        if let Some(limit) = self.step_limit {
            return limit;
        }
        let len = f.monomials().map(DiffMonomial::len).max().unwrap_or(0) as u32;
        let order = f
            .monomials()
            .filter_map(DiffMonomial::max_order)
            .max()
            .unwrap_or(0) as usize;
        let letters = (self.algebra.dim() * (order + 1)) as u128;
        let words: u128 = (1..=len)
            .map(|k| letters.saturating_pow(k))
            .fold(0u128, u128::saturating_add);
        words.saturating_mul(64).min(50_000_000) as usize
    }

    pub fn normal_form(&self, f: &DiffPoly, strategy: Strategy) -> Result<DiffPoly> {
        let limit = self.step_ceiling(f);
        match strategy {
            Strategy::Deterministic => {
                let mut steps = 0usize;
                let mut out = DiffPoly::zero();
                for (u, c) in f.terms() {
                    out.add_scaled(c, &*self.nf_monomial(u, &mut steps, limit)?);
                }
                Ok(out)
            }
            Strategy::Seeded(seed) => self.nf_random(f, seed, limit),
        }
    }

    /// Deterministic normal form of a monomial. Rewriting the greatest
    /// reducible monomial first only ever produces smaller monomials, so the
    /// strategy is linear and its normal forms can be cached per monomial.
    fn nf_monomial(
        &self,
        u: &DiffMonomial,
        steps: &mut usize,
        limit: usize,
    ) -> Result<Arc<DiffPoly>> {
        if let Some(hit) = self
            .normal_forms
            .read()
            .expect("normal form memo poisoned")
            .get(u)
        {
            return Ok(hit.clone());
        }
        let result = match leftmost_redex(u) {
            None => DiffPoly::monomial(u.clone()),
            Some((pos, key)) => {
                *steps += 1;
                if *steps > limit {
                    return Err(Error::StepLimit(limit));
                }
                let next = self.rewrite_monomial(u, pos, key);
                let mut out = DiffPoly::zero();
                for (m, c) in next.terms() {
                    out.add_scaled(c, &*self.nf_monomial(m, steps, limit)?);
                }
                out
            }
        };
        let result = Arc::new(result);
        Ok(self
            .normal_forms
            .write()
            .expect("normal form memo poisoned")
            .entry(u.clone())
            .or_insert(result)
            .clone())
    }

    fn nf_random(&self, f: &DiffPoly, seed: u64, limit: usize) -> Result<DiffPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut current = f.clone();
        for _ in 0..=limit {
            let redexes: Vec<(&DiffMonomial, usize, RuleKey)> = current
                .monomials()
                .flat_map(|u| {
                    u.letters()
                        .windows(2)
                        .enumerate()
                        .filter_map(move |(i, p)| redex_key(p[0], p[1]).map(|k| (u, i, k)))
                })
                .collect();
            if redexes.is_empty() {
                return Ok(current);
            }
            let (u, pos, key) = redexes[rng.gen_range(0..redexes.len())];
            let u = u.clone();
            let c = current.coefficient(&u);
            let replacement = self.rewrite_monomial(&u, pos, key);
            current.add_term(u, -c.clone());
            current.add_scaled(&c, &replacement);
        }
        Err(Error::StepLimit(limit))
    }

    /// `nf(x y') = x≺y` and `nf(x' y) = x≻y` for basis letters.
    pub fn products_agree(&self) -> Result<bool> {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (Generator(i as u32), Generator(j as u32));
                let xy1 = DiffMonomial::new(vec![DiffLetter::new(x, 0), DiffLetter::new(y, 1)]);
                let x1y = DiffMonomial::new(vec![DiffLetter::new(x, 1), DiffLetter::new(y, 0)]);
                let a = self.normal_form(&xy1.into(), Strategy::Deterministic)?;
                let b = self.normal_form(&x1y.into(), Strategy::Deterministic)?;
                if a != self.embed_vector(self.algebra.prec_basis(i, j))
                    || b != self.embed_vector(self.algebra.succ_basis(i, j))
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn show(&self, f: &DiffPoly) -> String {
        f.display(&self.alphabet)
    }
}

/// Mixes a base seed with per-word and per-trial indices.
pub fn mix_seed(base: u64, word: u64, trial: u64) -> u64 {
    let mut z =
        base ^ word.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ trial.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_length: usize,
    pub max_order: u32,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_length: 4,
            max_order: 3,
            trials: 8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub word: String,
    pub nf_a: String,
    pub nf_b: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    pub divergences: Vec<Divergence>,
    /// Seconds.
    pub elapsed: f64,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.divergences.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn describe_outcome(env: &Envelope, r: &Result<DiffPoly>) -> String {
    match r {
        Ok(p) => env.show(p),
        Err(e) => format!("error: {e}"),
    }
}

/// Normal forms of every weight −1 word within the bounds, under the
/// deterministic strategy and `trials` seeded ones. Any disagreement (or a
/// tripped step ceiling) is reported with its witness word.
pub fn confluence_check(env: &Envelope, bounds: &Bounds) -> ConfluenceReport {
    let start = Instant::now();
    let words: Vec<DiffMonomial> = enumerate_weight_minus1(env.algebra.dim(), bounds.max_length)
        .into_iter()
        .filter(|u| u.max_order().unwrap_or(0) <= bounds.max_order)
        .collect();
    let divergences: Vec<Divergence> = words
        .par_iter()
        .enumerate()
        .filter_map(|(idx, u)| {
            let f = DiffPoly::monomial(u.clone());
            let reference = env.normal_form(&f, Strategy::Deterministic);
            for trial in 0..bounds.trials {
                let seed = mix_seed(bounds.seed, idx as u64, trial as u64);
                let other = env.normal_form(&f, Strategy::Seeded(seed));
                let agree = matches!((&reference, &other), (Ok(a), Ok(b)) if a == b);
                if !agree {
                    return Some(Divergence {
                        word: u.display(&env.alphabet),
                        nf_a: describe_outcome(env, &reference),
                        nf_b: describe_outcome(env, &other),
                    });
                }
            }
            None
        })
        .collect();
    ConfluenceReport {
        words_checked: words.len(),
        divergences,
        elapsed: elapsed_secs(start),
    }
}

fn elapsed_secs(start: Instant) -> f64 {
    let d: Duration = start.elapsed();
    d.as_secs_f64()
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingReport {
    pub identities_hold: bool,
    pub letters_terminal: bool,
    pub confluence: ConfluenceReport,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.identities_hold && self.letters_terminal && self.confluence.is_confluent()
    }
}

/// Bounded certificate that the basis letters span a subspace meeting the
/// relation ideal trivially: the weight −1 sector is confluent within the
/// bounds and every basis letter is its own normal form.
pub fn embedding_check(env: &Envelope, bounds: &Bounds) -> EmbeddingReport {
    let identities_hold = env.algebra.validate().is_empty();
    let letters_terminal = (0..env.algebra.dim()).all(|i| {
        let x = DiffPoly::monomial(env.letter(i));
        env.normal_form(&x, Strategy::Deterministic).ok().as_ref() == Some(&x)
    });
    let confluence = confluence_check(env, bounds);
    EmbeddingReport {
        identities_hold,
        letters_terminal,
        confluence,
    }
}

/// The two overlap shapes of principal words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverlapFamily {
    /// `x y^(n) z` with `R_n(x, y)` against `L_n(y, z)`.
    RightLeft,
    /// `x^(n) y z^(m)` with `L_n(x, y)` against `R_m(y, z)`.
    LeftRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextBounds {
    /// Total letters in the left and right contexts together.
    pub max_context_length: usize,
    pub max_order: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalDivergence {
    pub family: OverlapFamily,
    pub word: String,
    pub nf_a: String,
    pub nf_b: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPairReport {
    pub pairs_checked: usize,
    pub right_left_pairs: usize,
    pub left_right_pairs: usize,
    pub divergences: Vec<CriticalDivergence>,
    pub elapsed: f64,
}

impl CriticalPairReport {
    pub fn all_converge(&self) -> bool {
        self.divergences.is_empty()
    }
}

/// All words of length `<= max_len` over the given letters, shortest first.
fn words_up_to(letters: &[DiffLetter], max_len: usize) -> Vec<Vec<DiffLetter>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in letters {
                let mut v: Vec<DiffLetter> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Both overlap families for orders `n` (and `m`), embedded in every context
/// `w1 · core · w2` of total weight −1 within the bounds. Both one-step
/// rewrites of the overlap are reduced to normal form and compared.
pub fn critical_pair_report(
    env: &Envelope,
    n: u32,
    m: u32,
    bounds: &ContextBounds,
) -> Result<CriticalPairReport> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroOrderRule);
    }
    let start = Instant::now();
    let dim = env.algebra.dim();
    let letters: Vec<DiffLetter> = (0..dim as u32)
        .flat_map(|g| (0..=bounds.max_order).map(move |o| DiffLetter::new(Generator(g), o)))
        .collect();
    let contexts = words_up_to(&letters, bounds.max_context_length);
    let mut cores = Vec::new();
    for x in 0..dim as u32 {
        for y in 0..dim as u32 {
            for z in 0..dim as u32 {
                let (x, y, z) = (Generator(x), Generator(y), Generator(z));
                cores.push((
                    OverlapFamily::RightLeft,
                    [
                        DiffLetter::new(x, 0),
                        DiffLetter::new(y, n),
                        DiffLetter::new(z, 0),
                    ],
                ));
                cores.push((
                    OverlapFamily::LeftRight,
                    [
                        DiffLetter::new(x, n),
                        DiffLetter::new(y, 0),
                        DiffLetter::new(z, m),
                    ],
                ));
            }
        }
    }
    let results: Vec<(OverlapFamily, usize, Vec<CriticalDivergence>)> = cores
        .par_iter()
        .map(|(family, core)| {
            let core_weight: i64 = core.iter().map(DiffLetter::weight).sum();
            let mut checked = 0;
            let mut found = Vec::new();
            for w1 in &contexts {
                let w1_weight: i64 = w1.iter().map(DiffLetter::weight).sum();
                for w2 in &contexts {
                    if w1.len() + w2.len() > bounds.max_context_length {
                        continue;
                    }
                    let w2_weight: i64 = w2.iter().map(DiffLetter::weight).sum();
                    if w1_weight + core_weight + w2_weight != -1 {
                        continue;
                    }
                    let mut letters = w1.clone();
                    letters.extend_from_slice(core);
                    letters.extend_from_slice(w2);
                    let word = DiffMonomial::new(letters);
                    let p = w1.len();
                    let k1 = redex_key(core[0], core[1]).expect("overlap has a left redex");
                    let k2 = redex_key(core[1], core[2]).expect("overlap has a right redex");
                    let f = DiffPoly::monomial(word.clone());
                    let branch = |pos: usize, key: RuleKey| -> Result<DiffPoly> {
                        let redex = Redex {
                            monomial: word.clone(),
                            position: pos,
                            key,
                        };
                        env.normal_form(&env.rewrite_step(&f, &redex)?, Strategy::Deterministic)
                    };
                    let a = branch(p, k1);
                    let b = branch(p + 1, k2);
                    checked += 1;
                    if !matches!((&a, &b), (Ok(x), Ok(y)) if x == y) {
                        found.push(CriticalDivergence {
                            family: *family,
                            word: word.display(&env.alphabet),
                            nf_a: describe_outcome(env, &a),
                            nf_b: describe_outcome(env, &b),
                        });
                    }
                }
            }
            (*family, checked, found)
        })
        .collect();
    let mut report = CriticalPairReport {
        pairs_checked: 0,
        right_left_pairs: 0,
        left_right_pairs: 0,
        divergences: Vec::new(),
        elapsed: 0.0,
    };
    for (family, checked, found) in results {
        report.pairs_checked += checked;
        match family {
            OverlapFamily::RightLeft => report.right_left_pairs += checked,
            OverlapFamily::LeftRight => report.left_right_pairs += checked,
        }
        report.divergences.extend(found);
    }
    report.elapsed = elapsed_secs(start);
    Ok(report)
}

/// Random words over `dim` letters with length in `1..=max_length` and
/// orders `<= max_order`, rejection-sampled until `accept` holds.
pub fn sample_words(
    dim: usize,
    max_length: usize,
    max_order: u32,
    count: usize,
    seed: u64,
    accept: impl Fn(&DiffMonomial) -> bool,
) -> Vec<DiffMonomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(1..=max_length);
        let letters = (0..len)
            .map(|_| {
                DiffLetter::new(
                    Generator(rng.gen_range(0..dim as u32)),
                    rng.gen_range(0..=max_order),
                )
            })
            .collect();
        let u = DiffMonomial::new(letters);
        if accept(&u) {
            out.push(u);
        }
    }
    out
}

/// `e_i` for every basis index, as vectors.
pub fn basis_vectors(dim: usize) -> Vec<Vector> {
    (0..dim).map(|i| unit_vector(dim, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalgebra::{matrix_inner, truncated_polynomials};
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn m2() -> Envelope {
        Envelope::new(matrix_inner(2, &ints(&[0, 1])).unwrap())
    }

    fn w(pairs: &[(u32, u32)]) -> DiffMonomial {
        DiffMonomial::from_pairs(pairs)
    }

    #[test]
    fn rule_shapes() {
        let env = m2();
        let (x, y) = (0usize, 1usize); // e11, e12
        let r1 = env.instantiate_rule(RuleKind::R, 1, x, y).unwrap();
        assert_eq!(r1.lhs(), w(&[(0, 0), (1, 1)]));
        // e11 ≺ e12 = -e12
        assert_eq!(r1.rhs, DiffPoly::term(w(&[(1, 0)]), int(-1)));
        let r2 = env.instantiate_rule(RuleKind::R, 2, x, y).unwrap();
        let expect =
            DiffPoly::from_terms([(w(&[(1, 1)]), int(-1)), (w(&[(0, 1), (1, 1)]), int(-1))]);
        assert_eq!(r2.rhs, expect);
        let l2 = env.instantiate_rule(RuleKind::L, 2, 1, 2).unwrap();
        assert_eq!(l2.lhs(), w(&[(1, 2), (2, 0)]));
        // e12 ≻ e21 = -e11, so (x≻y)' = -e11'
        let expect =
            DiffPoly::from_terms([(w(&[(0, 1)]), int(-1)), (w(&[(1, 1), (2, 1)]), int(-1))]);
        assert_eq!(l2.rhs, expect);
        assert_eq!(
            env.instantiate_rule(RuleKind::R, 0, 0, 0),
            Err(Error::ZeroOrderRule)
        );
        assert!(matches!(
            env.instantiate_rule(RuleKind::R, 1, 0, 9),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn rules_are_homogeneous_and_dominated() {
        let env = m2();
        for kind in [RuleKind::R, RuleKind::L] {
            for n in 1..=4 {
                for x in 0..4 {
                    for y in 0..4 {
                        let r = env.instantiate_rule(kind, n, x, y).unwrap();
                        let lhs = r.lhs();
                        assert_eq!(lhs.weight(), n as i64 - 2);
                        for u in r.rhs.monomials() {
                            assert_eq!(u.weight(), n as i64 - 2);
                            assert!(u < &lhs);
                        }
                        assert_eq!(r.relation().leading_monomial().unwrap(), &lhs);
                    }
                }
            }
        }
    }

    #[test]
    fn redex_examples() {
        let r = find_redexes(&w(&[(0, 0), (1, 1)]));
        assert_eq!(r.len(), 1);
        assert_eq!(
            (r[0].position, r[0].key.kind, r[0].key.n),
            (0, RuleKind::R, 1)
        );
        let r = find_redexes(&w(&[(0, 0), (1, 1), (2, 0)]));
        assert_eq!(
            r.iter()
                .map(|r| (r.position, r.key.kind))
                .collect::<Vec<_>>(),
            vec![(0, RuleKind::R), (1, RuleKind::L)]
        );
        assert!(find_redexes(&w(&[(0, 1), (1, 2)])).is_empty());
    }

    #[test]
    fn rewrite_examples() {
        let env = m2();
        // y z'' x with y = e11, z = e12, x = e21
        let u = w(&[(0, 0), (1, 2), (2, 0)]);
        let f = DiffPoly::monomial(u.clone());
        let redexes = find_redexes(&u);
        let step = env.rewrite_step(&f, &redexes[1]).unwrap();
        // L_2(z, x) gives y (z≻x)' - y z' x' with z≻x = -e11
        let expect = DiffPoly::from_terms([
            (w(&[(0, 0), (1, 1), (2, 1)]), int(-1)),
            (w(&[(0, 0), (0, 1)]), int(-1)),
        ]);
        assert_eq!(step, expect);
        let stale = env.rewrite_step(&DiffPoly::zero(), &redexes[0]);
        assert_eq!(stale, Err(Error::StaleRedex));
        let xy1 = DiffPoly::monomial(w(&[(0, 0), (1, 1)]));
        let r = &find_redexes(&w(&[(0, 0), (1, 1)]))[0];
        assert_eq!(
            env.rewrite_step(&xy1, r).unwrap(),
            DiffPoly::term(w(&[(1, 0)]), int(-1))
        );
    }

    #[test]
    fn two_branches_of_an_overlap() {
        let env = m2();
        let u = w(&[(0, 0), (1, 1), (2, 0)]);
        let f = DiffPoly::monomial(u.clone());
        let rs = find_redexes(&u);
        let a = env.rewrite_step(&f, &rs[0]).unwrap();
        let b = env.rewrite_step(&f, &rs[1]).unwrap();
        // (e11≺e12) e21 = -e12 e21 versus e11 (e12≻e21) = -e11 e11
        assert_eq!(a, DiffPoly::term(w(&[(1, 0), (2, 0)]), int(-1)));
        assert_eq!(b, DiffPoly::term(w(&[(0, 0), (0, 0)]), int(-1)));
    }

    #[test]
    fn products_are_recovered() {
        assert!(m2().products_agree().unwrap());
        let t = Envelope::new(truncated_polynomials(3, 1).unwrap().derived());
        assert!(t.products_agree().unwrap());
    }

    #[test]
    fn strategies_agree_on_small_words() {
        let env = m2();
        for u in enumerate_weight_minus1(4, 3) {
            let f = DiffPoly::monomial(u);
            let a = env.normal_form(&f, Strategy::Deterministic).unwrap();
            assert!(check_sector_shape(&a, Sector::MinusOne));
            for seed in 0..3 {
                assert_eq!(env.normal_form(&f, Strategy::Seeded(seed)).unwrap(), a);
            }
        }
    }

    #[test]
    fn step_limit_trips() {
        let env = Envelope::new(matrix_inner(2, &ints(&[0, 1])).unwrap()).with_step_limit(1);
        let f = DiffPoly::monomial(w(&[(0, 0), (1, 2), (2, 0)]));
        assert!(matches!(
            env.normal_form(&f, Strategy::Seeded(1)),
            Err(Error::StepLimit(1))
        ));
        assert!(matches!(
            env.normal_form(&f, Strategy::Deterministic),
            Err(Error::StepLimit(1))
        ));
    }

    #[test]
    fn sector_predicates() {
        assert!(Sector::MinusOne.admits(&w(&[(0, 0)])));
        assert!(!Sector::MinusOne.admits(&w(&[(0, 0), (1, 1)])));
        assert!(Sector::Negative(2).admits(&w(&[(0, 0), (1, 0)])));
        assert!(Sector::Zero.admits(&w(&[(0, 1), (1, 1)])));
        assert!(!Sector::Zero.admits(&w(&[(0, 2), (1, 0)])));
        assert!(Sector::Positive.admits(&w(&[(0, 2), (1, 1)])));
        assert_eq!(Sector::of_weight(-3), Sector::Negative(3));
        assert_eq!(Sector::of_weight(2), Sector::Positive);
    }

    #[test]
    fn small_confluence_and_embedding() {
        let env = m2();
        let bounds = Bounds {
            max_length: 3,
            max_order: 2,
            trials: 2,
            seed: 7,
        };
        let report = embedding_check(&env, &bounds);
        assert!(report.passed(), "{:?}", report.confluence.divergences);
        assert_eq!(report.confluence.words_checked, 4 + 16 * 2 + 64 * 6);
    }

    #[test]
    fn critical_pairs_small() {
        let env = m2();
        let bounds = ContextBounds {
            max_context_length: 1,
            max_order: 2,
        };
        let rep = critical_pair_report(&env, 1, 1, &bounds).unwrap();
        assert!(rep.all_converge(), "{:?}", rep.divergences);
        assert!(rep.right_left_pairs > 0 && rep.left_right_pairs > 0);
    }
}
