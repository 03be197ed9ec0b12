//! Terms of the free algebra with two products `≺`, `≻` and their evaluation
//! `τ` into the free differential algebra: `τ(u ≺ v) = τ(u)·d(τ(v))` and
//! `τ(u ≻ v) = d(τ(u))·τ(v)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diffalg::{Alphabet, DiffMonomial, DiffPoly, Generator};
use crate::error::{Error, Result};
use crate::linalg::{self, axpy, SparseVec};
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Prec,
    Succ,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::Prec => '<',
            Op::Succ => '>',
        }
    }
}

/// Binary tree over generators; structural order compares the operation
/// label first, then the subterms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DasTerm {
    Leaf(Generator),
    Node(Op, Box<DasTerm>, Box<DasTerm>),
}

impl DasTerm {
    pub fn leaf(id: u32) -> Self {
        DasTerm::Leaf(Generator(id))
    }

    pub fn node(op: Op, left: DasTerm, right: DasTerm) -> Self {
        DasTerm::Node(op, Box::new(left), Box::new(right))
    }

    pub fn prec(left: DasTerm, right: DasTerm) -> Self {
        Self::node(Op::Prec, left, right)
    }

    pub fn succ(left: DasTerm, right: DasTerm) -> Self {
        Self::node(Op::Succ, left, right)
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            DasTerm::Leaf(_) => 1,
            DasTerm::Node(_, l, r) => l.degree() + r.degree(),
        }
    }

    /// Leaves read left to right.
    pub fn leaves(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Generator>) {
        match self {
            DasTerm::Leaf(g) => out.push(*g),
            DasTerm::Node(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn max_generator(&self) -> Generator {
        self.leaves()
            .into_iter()
            .max()
            .expect("terms have at least one leaf")
    }

    /// Renames the leaves in reading order.
    fn relabel(&self, next: &mut impl FnMut(Generator) -> Generator) -> DasTerm {
        match self {
            DasTerm::Leaf(g) => DasTerm::Leaf(next(*g)),
            DasTerm::Node(op, l, r) => {
                let l = l.relabel(next);
                let r = r.relabel(next);
                DasTerm::node(*op, l, r)
            }
        }
    }

    /// Replaces every leaf by a polynomial, expanding bilinearly. Leaves
    /// without an entry in `map` are kept.
    pub fn substitute(&self, map: &BTreeMap<Generator, DasPoly>) -> DasPoly {
        match self {
            DasTerm::Leaf(g) => map
                .get(g)
                .cloned()
                .unwrap_or_else(|| DasPoly::from(self.clone())),
            DasTerm::Node(op, l, r) => {
                DasPoly::combine(*op, &l.substitute(map), &r.substitute(map))
            }
        }
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        match self {
            DasTerm::Leaf(g) => alphabet.name(*g),
            DasTerm::Node(op, l, r) => {
                format!(
                    "({} {} {})",
                    l.display(alphabet),
                    op.symbol(),
                    r.display(alphabet)
                )
            }
        }
    }
}

impl fmt::Display for DasTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&Alphabet::default()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DasPoly {
    terms: SparseVec<DasTerm>,
}

impl DasPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (DasTerm, Rational)>) -> Self {
        let mut p = Self::zero();
        for (t, c) in terms {
            p.add_term(t, c);
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

    pub fn terms(&self) -> impl Iterator<Item = (&DasTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, t: DasTerm, c: Rational) {
        let single = SparseVec::from([(t, c)]);
        axpy(&mut self.terms, &Rational::one(), &single);
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &DasPoly) {
        axpy(&mut self.terms, factor, &other.terms);
    }

    pub fn scale(&self, factor: &Rational) -> DasPoly {
        let mut out = DasPoly::zero();
        out.add_scaled(factor, self);
        out
    }

    /// Bilinear extension of `op`.
    pub fn combine(op: Op, left: &DasPoly, right: &DasPoly) -> DasPoly {
        let mut out = DasPoly::zero();
        for (a, ca) in &left.terms {
            for (b, cb) in &right.terms {
                out.add_term(DasTerm::node(op, a.clone(), b.clone()), ca * cb);
            }
        }
        out
    }

    pub fn prec(left: &DasPoly, right: &DasPoly) -> DasPoly {
        Self::combine(Op::Prec, left, right)
    }

    pub fn succ(left: &DasPoly, right: &DasPoly) -> DasPoly {
        Self::combine(Op::Succ, left, right)
    }

    pub fn sub(&self, other: &DasPoly) -> DasPoly {
        let mut out = self.clone();
        out.add_scaled(&int(-1), other);
        out
    }

    pub fn substitute(&self, map: &BTreeMap<Generator, DasPoly>) -> DasPoly {
        let mut out = DasPoly::zero();
        for (t, c) in &self.terms {
            out.add_scaled(c, &t.substitute(map));
        }
        out
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&format_rational(&abs));
                out.push(' ');
            }
            out.push_str(&t.display(alphabet));
        }
        out
    }
}

impl From<DasTerm> for DasPoly {
    fn from(t: DasTerm) -> Self {
        DasPoly::from_terms([(t, Rational::one())])
    }
}

/// Evaluation of a term in the free differential algebra.
pub fn tau(t: &DasTerm) -> DiffPoly {
    match t {
        DasTerm::Leaf(g) => DiffPoly::monomial(DiffMonomial::letter(*g, 0)),
        DasTerm::Node(Op::Prec, l, r) => &tau(l) * &tau(r).derive(),
        DasTerm::Node(Op::Succ, l, r) => &tau(l).derive() * &tau(r),
    }
}

pub fn tau_poly(f: &DasPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (t, c) in f.terms() {
        out.add_scaled(c, &tau(t));
    }
    out
}

/// Equality in the free algebra, decided through the injective map `τ`.
pub fn check_free_identity(lhs: &DasPoly, rhs: &DasPoly) -> bool {
    tau_poly(lhs) == tau_poly(rhs)
}

pub fn rank_of_span(vectors: &[DiffPoly]) -> usize {
    linalg::rank(vectors.iter().map(|p| p.as_sparse().clone()))
}

/// All binary bracketing shapes with `n` leaves, as terms over placeholder
/// leaves `0..n` in order.
fn shapes(n: usize, ops: &[Op]) -> Vec<DasTerm> {
    fn build(lo: u32, hi: u32, ops: &[Op]) -> Vec<DasTerm> {
        if hi - lo == 1 {
            return vec![DasTerm::leaf(lo)];
        }
        let mut out = Vec::new();
        for split in lo + 1..hi {
            let lefts = build(lo, split, ops);
            let rights = build(split, hi, ops);
            for l in &lefts {
                for r in &rights {
                    for &op in ops {
                        out.push(DasTerm::node(op, l.clone(), r.clone()));
                    }
                }
            }
        }
        out
    }
    build(0, n as u32, ops)
}

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u32);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn place_leaves(shape: &DasTerm, perm: &[u32]) -> DasTerm {
    shape.relabel(&mut |g| Generator(perm[g.0 as usize]))
}

/// Multilinear terms on generators `0..n` built from the given operations,
/// leaf order outermost.
pub fn enumerate_multilinear_with(n: usize, ops: &[Op]) -> Vec<DasTerm> {
    assert!(n >= 1, "multilinear degree must be positive");
    let shapes = shapes(n, ops);
    let mut out = Vec::with_capacity(shapes.len() * (1..=n).product::<usize>());
    for perm in permutations(n) {
        for s in &shapes {
            out.push(place_leaves(s, &perm));
        }
    }
    out
}

/// Every term using each of the generators `0..n` exactly once:
/// `Catalan(n-1) · 2^(n-1) · n!` of them.
pub fn enumerate_multilinear(n: usize) -> Vec<DasTerm> {
    enumerate_multilinear_with(n, &[Op::Prec, Op::Succ])
}

/// `[a, b] = a ≺ b - b ≻ a`.
pub fn commutator(a: &DasPoly, b: &DasPoly) -> DasPoly {
    DasPoly::prec(a, b).sub(&DasPoly::succ(b, a))
}

/// All multilinear commutator monomials on generators `0..n`.
pub fn enumerate_commutators(n: usize) -> Vec<DasPoly> {
    fn expand(t: &DasTerm) -> DasPoly {
        match t {
            DasTerm::Leaf(_) => DasPoly::from(t.clone()),
            DasTerm::Node(_, l, r) => commutator(&expand(l), &expand(r)),
        }
    }
    enumerate_multilinear_with(n, &[Op::Prec])
        .iter()
        .map(expand)
        .collect()
}

/// A named defining or derived identity `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct Identity {
    pub label: &'static str,
    pub lhs: DasPoly,
    pub rhs: DasPoly,
}

fn assoc_prec(a: &DasPoly, b: &DasPoly, c: &DasPoly) -> DasPoly {
    DasPoly::prec(&DasPoly::prec(a, b), c).sub(&DasPoly::prec(a, &DasPoly::prec(b, c)))
}

fn assoc_succ(a: &DasPoly, b: &DasPoly, c: &DasPoly) -> DasPoly {
    DasPoly::succ(&DasPoly::succ(a, b), c).sub(&DasPoly::succ(a, &DasPoly::succ(b, c)))
}

/// The two defining identities and the two derived four-variable ones,
/// instantiated on generators `x, y, z, b`.
pub fn identity_suite(x: Generator, y: Generator, z: Generator, b: Generator) -> Vec<Identity> {
    let [x, y, z, b] = [x, y, z, b].map(|g| DasPoly::from(DasTerm::Leaf(g)));
    let (p, s) = (DasPoly::prec, DasPoly::succ);
    vec![
        Identity {
            label: "(4)",
            lhs: s(&x, &p(&y, &z)),
            rhs: p(&s(&x, &y), &z),
        },
        Identity {
            label: "(5)",
            lhs: s(&p(&x, &y), &z).sub(&s(&x, &s(&y, &z))),
            rhs: p(&x, &s(&y, &z)).sub(&p(&p(&x, &y), &z)),
        },
        Identity {
            label: "(6)",
            lhs: assoc_prec(&p(&x, &y), &z, &b),
            rhs: assoc_prec(&x, &s(&y, &z), &b),
        },
        Identity {
            label: "(7)",
            lhs: assoc_succ(&x, &p(&y, &z), &b),
            rhs: assoc_succ(&x, &y, &s(&z, &b)),
        },
    ]
}

/// One order class of a complete linearization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPart {
    /// For each repeated variable, the copy indices in reading order.
    pub order: Vec<(Generator, Vec<usize>)>,
    pub poly: DasPoly,
}

impl LinearPart {
    pub fn is_identity(&self) -> bool {
        self.order
            .iter()
            .all(|(_, perm)| perm.iter().enumerate().all(|(i, &p)| i == p))
    }
}

#[derive(Debug, Clone)]
pub struct Linearization {
    /// `(fresh generator, original generator, copy index)`.
    pub copies: Vec<(Generator, Generator, usize)>,
    /// Parts grouped by the reading order of copies; the identity order first.
    pub parts: Vec<LinearPart>,
    /// Substituting the originals back into the full linearization
    /// multiplies `f` by this factor (product of `deg_x(f)!`). Each single
    /// part resubstitutes to `f` itself.
    pub full_factor: u64,
}

impl Linearization {
    pub fn identity_part(&self) -> &LinearPart {
        &self.parts[0]
    }

    /// Sum of all parts.
    pub fn complete(&self) -> DasPoly {
        let mut out = DasPoly::zero();
        for part in &self.parts {
            out.add_scaled(&Rational::one(), &part.poly);
        }
        out
    }

    /// Maps every fresh copy back to its original variable.
    pub fn resubstitute(&self, f: &DasPoly) -> DasPoly {
        let map = self
            .copies
            .iter()
            .map(|&(fresh, orig, _)| (fresh, DasPoly::from(DasTerm::Leaf(orig))))
            .collect();
        f.substitute(&map)
    }

    /// Names copies `<name><k>` (1-based) on top of `alphabet`.
    pub fn extend_alphabet(&self, alphabet: &Alphabet) -> Alphabet {
        let mut names = alphabet.names().to_vec();
        for &(fresh, orig, k) in &self.copies {
            while names.len() < fresh.0 as usize {
                let g = Generator(names.len() as u32);
                names.push(alphabet.name(g));
            }
            let mut name = format!("{}{}", alphabet.name(orig), k + 1);
            while names.contains(&name) {
                name.push('_');
            }
            names.push(name);
        }
        Alphabet::new(names)
    }
}

/// Complete linearization of a polynomial homogeneous in each variable,
/// split by the reading order of the copies of each repeated variable.
pub fn linearize(f: &DasPoly) -> Result<Linearization> {
    let mut degrees: Option<BTreeMap<Generator, usize>> = None;
    for (t, _) in f.terms() {
        let mut d = BTreeMap::new();
        for g in t.leaves() {
            *d.entry(g).or_insert(0) += 1;
        }
        match &degrees {
            None => degrees = Some(d),
            Some(prev) if *prev != d => {
                let bad = prev
                    .keys()
                    .chain(d.keys())
                    .find(|g| prev.get(g) != d.get(g))
                    .copied()
                    .unwrap_or(Generator(0));
                return Err(Error::NotHomogeneous(Alphabet::default().name(bad)));
            }
            Some(_) => {}
        }
    }
    let Some(degrees) = degrees else {
        return Ok(Linearization {
            copies: vec![],
            parts: vec![],
            full_factor: 1,
        });
    };
    let next_id = f
        .terms()
        .map(|(t, _)| t.max_generator().0 + 1)
        .max()
        .unwrap_or(0);
    let mut copies = Vec::new();
    let mut fresh_of: BTreeMap<Generator, Vec<Generator>> = BTreeMap::new();
    let mut full_factor = 1u64;
    for (&g, &d) in &degrees {
        if d > 1 {
            let ids: Vec<Generator> = (0..d)
                .map(|k| Generator(next_id + copies.len() as u32 + k as u32))
                .collect();
            for (k, &fresh) in ids.iter().enumerate() {
                copies.push((fresh, g, k));
            }
            fresh_of.insert(g, ids);
            full_factor *= (1..=d as u64).product::<u64>();
        }
    }
    let repeated: Vec<Generator> = fresh_of.keys().copied().collect();
    // cartesian product of per-variable permutations
    let mut orders: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for g in &repeated {
        let perms = permutations(fresh_of[g].len());
        orders = orders
            .into_iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.iter().map(|&i| i as usize).collect());
                    next
                })
            })
            .collect();
    }
    let parts = orders
        .into_iter()
        .map(|choice| {
            let mut poly = DasPoly::zero();
            for (t, c) in f.terms() {
                let mut seen: BTreeMap<Generator, usize> = BTreeMap::new();
                let renamed = t.relabel(&mut |g| match repeated.iter().position(|r| *r == g) {
                    Some(v) => {
                        let k = seen.entry(g).or_insert(0);
                        let copy = choice[v][*k];
                        *k += 1;
                        fresh_of[&g][copy]
                    }
                    None => g,
                });
                poly.add_term(renamed, c.clone());
            }
            let order = repeated.iter().copied().zip(choice).collect();
            LinearPart { order, poly }
        })
        .collect();
    Ok(Linearization {
        copies,
        parts,
        full_factor,
    })
}
