//! Finite-dimensional algebras with products `≺` and `≻` given by structure
//! constants, and associative algebras with a derivation from which they are
//! derived via `x ≺ y = x·d(y)`, `x ≻ y = d(x)·y`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dasterm::{DasTerm, Op};
use crate::diffalg::{Alphabet, Generator};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::rational::{format_rational, int, parse_rational, Rational};

pub type Vector = Vec<Rational>;

pub fn zero_vector(dim: usize) -> Vector {
    vec![Rational::zero(); dim]
}

pub fn unit_vector(dim: usize, i: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[i] = Rational::one();
    v
}

fn to_sparse(v: &[Rational]) -> SparseVec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

fn add_assign(target: &mut [Rational], factor: &Rational, source: &[Rational]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t += factor * s;
    }
}

/// Bilinear product from a `dim³` table, `e_i * e_j = Σ_k table[i][j][k] e_k`.
fn bilinear(dim: usize, table: &[Rational], a: &[Rational], b: &[Rational]) -> Vector {
    let mut out = zero_vector(dim);
    for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let coeff = ai * bj;
            let base = (i * dim + j) * dim;
            add_assign(&mut out, &coeff, &table[base..base + dim]);
        }
    }
    out
}

/// A failed identity on a basis triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub triple: (usize, usize, usize),
    /// `lhs - rhs` in the basis.
    pub residual: Vector,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        let r: Vec<String> = self.residual.iter().map(format_rational).collect();
        write!(
            f,
            "{} fails on basis triple ({i}, {j}, {k}): residual [{}]",
            self.identity,
            r.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DasAlgebra {
    dim: usize,
    names: Vec<String>,
    prec: Vec<Rational>,
    succ: Vec<Rational>,
}

impl DasAlgebra {
    /// Validating constructor.
    pub fn new(names: Vec<String>, prec: Vec<Rational>, succ: Vec<Rational>) -> Result<Self> {
        let a = Self::new_unchecked(names, prec, succ)?;
        let violations = a.validate();
        if violations.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidAlgebra(
                violations.iter().map(ToString::to_string).collect(),
            ))
        }
    }

    /// Skips the identity check; shapes are still checked.
    pub fn new_unchecked(
        names: Vec<String>,
        prec: Vec<Rational>,
        succ: Vec<Rational>,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Spec("dimension must be positive".into()));
        }
        for table in [&prec, &succ] {
            if table.len() != dim * dim * dim {
                return Err(Error::DimensionMismatch {
                    expected: dim * dim * dim,
                    found: table.len(),
                });
            }
        }
        Ok(Self {
            dim,
            names,
            prec,
            succ,
        })
    }

    pub fn zero(dim: usize) -> Self {
        let names = (1..=dim).map(|i| format!("e{i}")).collect();
        let table = vec![Rational::zero(); dim * dim * dim];
        Self {
            dim,
            names,
            prec: table.clone(),
            succ: table,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.names.iter().cloned())
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn prec_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.prec[self.index(i, j, k)]
    }

    pub fn succ_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.succ[self.index(i, j, k)]
    }

    /// `e_i ≺ e_j` in the basis.
    pub fn prec_basis(&self, i: usize, j: usize) -> &[Rational] {
        let base = self.index(i, j, 0);
        &self.prec[base..base + self.dim]
    }

    /// `e_i ≻ e_j` in the basis.
    pub fn succ_basis(&self, i: usize, j: usize) -> &[Rational] {
        let base = self.index(i, j, 0);
        &self.succ[base..base + self.dim]
    }

    pub fn product(&self, op: Op, a: &[Rational], b: &[Rational]) -> Vector {
        match op {
            Op::Prec => self.prec(a, b),
            Op::Succ => self.succ(a, b),
        }
    }

    pub fn prec(&self, a: &[Rational], b: &[Rational]) -> Vector {
        bilinear(self.dim, &self.prec, a, b)
    }

    pub fn succ(&self, a: &[Rational], b: &[Rational]) -> Vector {
        bilinear(self.dim, &self.succ, a, b)
    }

    /// Overwrites one `≻` constant without revalidating.
    pub fn perturbed_succ(&self, i: usize, j: usize, k: usize, delta: &Rational) -> Self {
        let mut out = self.clone();
        let idx = self.index(i, j, k);
        out.succ[idx] += delta;
        out
    }

    /// Checks `x≻(y≺z) = (x≻y)≺z` and
    /// `(x≺y)≻z - x≻(y≻z) = x≺(y≻z) - (x≺y)≺z` on all basis triples.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim;
        let e: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x_prec_y = self.prec_basis(i, j).to_vec();
                let x_succ_y = self.succ_basis(i, j).to_vec();
                for k in 0..n {
                    let (x, z) = (&e[i], &e[k]);
                    let lhs = self.succ(x, self.prec_basis(j, k));
                    let rhs = self.prec(&x_succ_y, z);
                    let residual = sub(&lhs, &rhs);
                    if residual.iter().any(|c| !c.is_zero()) {
                        out.push(Violation {
                            identity: "(4)",
                            triple: (i, j, k),
                            residual,
                        });
                    }
                    let lhs = sub(
                        &self.succ(&x_prec_y, z),
                        &self.succ(x, self.succ_basis(j, k)),
                    );
                    let rhs = sub(
                        &self.prec(x, self.succ_basis(j, k)),
                        &self.prec(&x_prec_y, z),
                    );
                    let residual = sub(&lhs, &rhs);
                    if residual.iter().any(|c| !c.is_zero()) {
                        out.push(Violation {
                            identity: "(5)",
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        out
    }

    /// Interprets a term with leaves assigned to vectors.
    pub fn evaluate(
        &self,
        t: &DasTerm,
        assignment: &BTreeMap<Generator, Vector>,
    ) -> Result<Vector> {
        match t {
            DasTerm::Leaf(g) => {
                let v = assignment
                    .get(g)
                    .ok_or_else(|| Error::MissingAssignment(format!("g{}", g.0)))?;
                if v.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: v.len(),
                    });
                }
                Ok(v.clone())
            }
            DasTerm::Node(op, l, r) => {
                let a = self.evaluate(l, assignment)?;
                let b = self.evaluate(r, assignment)?;
                Ok(self.product(*op, &a, &b))
            }
        }
    }

    /// `A ≺ A + A ≻ A ≠ 0`.
    pub fn has_nonzero_product(&self) -> bool {
        self.prec.iter().chain(&self.succ).any(|c| !c.is_zero())
    }

    /// Smallest subspace containing `seed` and closed under `≺` and `≻` by
    /// basis elements on both sides.
    pub fn ideal_closure(&self, seed: &[Rational]) -> Subspace {
        let n = self.dim;
        let mut space = SparseEchelon::new();
        let mut queue = Vec::new();
        if space.insert(to_sparse(seed)) {
            queue.push(seed.to_vec());
        }
        let e: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        while let Some(v) = queue.pop() {
            for ek in &e {
                for w in [
                    self.prec(&v, ek),
                    self.prec(ek, &v),
                    self.succ(&v, ek),
                    self.succ(ek, &v),
                ] {
                    if space.insert(to_sparse(&w)) {
                        queue.push(w);
                    }
                }
            }
        }
        Subspace {
            ambient: n,
            echelon: space,
        }
    }

    /// Nonzero product and every basis vector generates the whole space.
    pub fn is_simple(&self) -> bool {
        self.has_nonzero_product()
            && (0..self.dim).all(|i| self.ideal_closure(&unit_vector(self.dim, i)).is_full())
    }

    /// `[x, y] = x ≺ y - y ≻ x`.
    pub fn commutator_algebra(&self) -> BracketTable {
        let n = self.dim;
        let mut table = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                table.extend(sub(self.prec_basis(i, j), self.succ_basis(j, i)));
            }
        }
        BracketTable { dim: n, table }
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            dim: Some(self.dim),
            names: Some(self.names.clone()),
            prec: Some(nest3(self.dim, &self.prec)),
            succ: Some(nest3(self.dim, &self.succ)),
            assoc: None,
        }
    }
}

fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    echelon: SparseEchelon<usize>,
}

impl Subspace {
    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.dimension() == self.ambient
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.echelon.contains(&to_sparse(v))
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.echelon
            .rows()
            .map(|row| {
                let mut v = zero_vector(self.ambient);
                for (&i, c) in row {
                    v[i] = c.clone();
                }
                v
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    dim: usize,
    table: Vec<Rational>,
}

impl BracketTable {
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let base = (i * self.dim + j) * self.dim;
        &self.table[base..base + self.dim]
    }

    pub fn bracket(&self, a: &[Rational], b: &[Rational]) -> Vector {
        bilinear(self.dim, &self.table, a, b)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Zero::is_zero)
    }
}

/// Associative algebra with a derivation; `der[j][l]` is the coefficient of
/// `e_l` in `d(e_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocDerAlgebra {
    dim: usize,
    names: Vec<String>,
    mult: Vec<Rational>,
    der: Vec<Rational>,
}

impl AssocDerAlgebra {
    pub fn new(names: Vec<String>, mult: Vec<Rational>, der: Vec<Rational>) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Spec("dimension must be positive".into()));
        }
        if mult.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: mult.len(),
            });
        }
        if der.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: der.len(),
            });
        }
        let a = Self {
            dim,
            names,
            mult,
            der,
        };
        let failures = a.failed_axioms();
        if failures.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidAlgebra(failures))
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        bilinear(self.dim, &self.mult, a, b)
    }

    pub fn derive(&self, a: &[Rational]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(n);
        for (j, c) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            add_assign(&mut out, c, &self.der[j * n..(j + 1) * n]);
        }
        out
    }

    /// Associativity and the Leibniz rule on basis elements.
    pub fn failed_axioms(&self) -> Vec<String> {
        let n = self.dim;
        let e: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&e[i], &e[j]);
                for k in 0..n {
                    if self.mul(&ij, &e[k]) != self.mul(&e[i], &self.mul(&e[j], &e[k])) {
                        out.push(format!("associativity fails on ({i}, {j}, {k})"));
                    }
                }
                let lhs = self.derive(&ij);
                let mut rhs = self.mul(&self.derive(&e[i]), &e[j]);
                add_assign(
                    &mut rhs,
                    &Rational::one(),
                    &self.mul(&e[i], &self.derive(&e[j])),
                );
                if lhs != rhs {
                    out.push(format!("Leibniz rule fails on ({i}, {j})"));
                }
            }
        }
        out
    }

    /// `x ≺ y = x·d(y)`, `x ≻ y = d(x)·y`.
    pub fn derived(&self) -> DasAlgebra {
        let n = self.dim;
        let e: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        let de: Vec<Vector> = e.iter().map(|v| self.derive(v)).collect();
        let mut prec = Vec::with_capacity(n * n * n);
        let mut succ = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                prec.extend(self.mul(&e[i], &de[j]));
                succ.extend(self.mul(&de[i], &e[j]));
            }
        }
        DasAlgebra {
            dim: n,
            names: self.names.clone(),
            prec,
            succ,
        }
    }
}

/// `derived(A)` for a validated `A`; kept as a free function for symmetry
/// with the other constructors.
pub fn derived(a: &AssocDerAlgebra) -> DasAlgebra {
    a.derived()
}

/// `M_n(ℚ)` on matrix units `e_ij` (index `i*n + j`) with `d(x) = [a, x]`,
/// `a = diag(a_1, ..., a_n)`, so `d(e_ij) = (a_i - a_j) e_ij`.
pub fn matrix_assoc(n: usize, diag: &[Rational]) -> Result<AssocDerAlgebra> {
    if n == 0 {
        return Err(Error::Spec("matrix size must be positive".into()));
    }
    if diag.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: diag.len(),
        });
    }
    let dim = n * n;
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
        .collect();
    let mut mult = vec![Rational::zero(); dim * dim * dim];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // e_ij e_jl = e_il
                let (a, b, c) = (i * n + j, j * n + l, i * n + l);
                mult[(a * dim + b) * dim + c] = Rational::one();
            }
        }
    }
    let mut der = vec![Rational::zero(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            let u = i * n + j;
            der[u * dim + u] = &diag[i] - &diag[j];
        }
    }
    AssocDerAlgebra::new(names, mult, der)
}

pub fn matrix_inner(n: usize, diag: &[Rational]) -> Result<DasAlgebra> {
    Ok(matrix_assoc(n, diag)?.derived())
}

/// `ℚ[x]/(x^k)` with `d = x^shift · d/dx`, basis `1, x, ..., x^(k-1)`.
///
/// `shift = 0` (plain `d/dx`) does not preserve the ideal `(x^k)` and is
/// rejected by the Leibniz check for `k >= 2`; `shift = 1` is the Euler
/// derivation `d(x^i) = i x^i`.
pub fn truncated_polynomials(k: usize, shift: usize) -> Result<AssocDerAlgebra> {
    if k == 0 {
        return Err(Error::Spec("truncation degree must be positive".into()));
    }
    let names = (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let mut mult = vec![Rational::zero(); k * k * k];
    for i in 0..k {
        for j in 0..k - i {
            mult[(i * k + j) * k + i + j] = Rational::one();
        }
    }
    let mut der = vec![Rational::zero(); k * k];
    for i in 1..k {
        let target = i - 1 + shift;
        if target < k {
            der[i * k + target] = int(i as i64);
        }
    }
    AssocDerAlgebra::new(names, mult, der)
}

/// A rational in a spec file: `"p/q"`, `"p"` or a bare integer.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RationalEntry {
    Text(String),
    Int(i64),
}

impl RationalEntry {
    fn value(&self) -> Result<Rational> {
        match self {
            RationalEntry::Text(s) => {
                parse_rational(s).ok_or_else(|| Error::Spec(format!("bad rational `{s}`")))
            }
            RationalEntry::Int(n) => Ok(int(*n)),
        }
    }
}

pub type Tensor3 = Vec<Vec<Vec<RationalEntry>>>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AssocSpec {
    pub mult: Tensor3,
    pub der: Vec<Vec<RationalEntry>>,
}

/// JSON algebra document: either structure constants for `≺`, `≻` directly,
/// or `{"assoc": {"mult", "der"}}` for the derived construction.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct AlgebraSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prec: Option<Tensor3>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub succ: Option<Tensor3>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assoc: Option<AssocSpec>,
}

fn nest3(dim: usize, flat: &[Rational]) -> Tensor3 {
    flat.chunks(dim * dim)
        .map(|plane| {
            plane
                .chunks(dim)
                .map(|row| {
                    row.iter()
                        .map(|c| RationalEntry::Text(format_rational(c)))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn flatten3(dim: usize, t: &Tensor3, what: &str) -> Result<Vec<Rational>> {
    let shape_ok = t.len() == dim
        && t.iter()
            .all(|p| p.len() == dim && p.iter().all(|r| r.len() == dim));
    if !shape_ok {
        return Err(Error::Spec(format!(
            "`{what}` must be a {dim}x{dim}x{dim} array"
        )));
    }
    t.iter()
        .flatten()
        .flatten()
        .map(RationalEntry::value)
        .collect()
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    fn resolve_dim(&self, inferred: usize) -> Result<(usize, Vec<String>)> {
        let dim = self.dim.unwrap_or(inferred);
        if dim != inferred {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: inferred,
            });
        }
        let names = match &self.names {
            Some(n) if n.len() != dim => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: n.len(),
                })
            }
            Some(n) => n.clone(),
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        Ok((dim, names))
    }

    /// Builds the algebra without checking the identities.
    pub fn build_unchecked(&self) -> Result<DasAlgebra> {
        if let Some(assoc) = &self.assoc {
            let (dim, names) = self.resolve_dim(assoc.mult.len())?;
            let mult = flatten3(dim, &assoc.mult, "assoc.mult")?;
            if assoc.der.len() != dim || assoc.der.iter().any(|r| r.len() != dim) {
                return Err(Error::Spec(format!(
                    "`assoc.der` must be a {dim}x{dim} array"
                )));
            }
            let der = assoc
                .der
                .iter()
                .flatten()
                .map(RationalEntry::value)
                .collect::<Result<_>>()?;
            return Ok(AssocDerAlgebra::new(names, mult, der)?.derived());
        }
        let (Some(prec), Some(succ)) = (&self.prec, &self.succ) else {
            return Err(Error::Spec(
                "need either `prec` and `succ` or `assoc`".into(),
            ));
        };
        let (dim, names) = self.resolve_dim(prec.len())?;
        DasAlgebra::new_unchecked(
            names,
            flatten3(dim, prec, "prec")?,
            flatten3(dim, succ, "succ")?,
        )
    }

    pub fn build(&self) -> Result<DasAlgebra> {
        let a = self.build_unchecked()?;
        let violations = a.validate();
        if violations.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidAlgebra(
                violations.iter().map(ToString::to_string).collect(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn m2() -> DasAlgebra {
        matrix_inner(2, &ints(&[0, 1])).unwrap()
    }

    // matrix units for n = 2
    const E11: usize = 0;
    const E12: usize = 1;
    const E21: usize = 2;
    const E22: usize = 3;

    #[test]
    fn derived_algebras_validate() {
        assert!(m2().validate().is_empty());
        assert!(DasAlgebra::zero(3).validate().is_empty());
        assert!(matrix_inner(3, &ints(&[0, 1, 2]))
            .unwrap()
            .validate()
            .is_empty());
        assert!(truncated_polynomials(3, 1)
            .unwrap()
            .derived()
            .validate()
            .is_empty());
        assert!(truncated_polynomials(3, 2)
            .unwrap()
            .derived()
            .validate()
            .is_empty());
    }

    #[test]
    fn perturbation_is_caught() {
        let bad = m2().perturbed_succ(E12, E21, E11, &int(1));
        let v = bad.validate();
        assert!(!v.is_empty());
        assert!(v.iter().any(|x| x.identity == "(5)"));
        assert!(DasAlgebra::new(bad.names().to_vec(), bad.prec.clone(), bad.succ.clone()).is_err());
    }

    #[test]
    fn inner_derivation_constants() {
        let a = matrix_assoc(2, &ints(&[0, 1])).unwrap();
        assert_eq!(a.derive(&unit_vector(4, E12)), ints(&[0, -1, 0, 0]));
        assert_eq!(a.derive(&unit_vector(4, E21)), ints(&[0, 0, 1, 0]));
        let d = m2();
        assert_eq!(d.prec_basis(E11, E12), ints(&[0, -1, 0, 0]).as_slice());
        assert_eq!(d.succ_basis(E12, E21), ints(&[-1, 0, 0, 0]).as_slice());
        let zero_der = matrix_inner(2, &ints(&[5, 5])).unwrap();
        assert!(!zero_der.has_nonzero_product());
        let one = matrix_inner(1, &ints(&[3])).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(!one.has_nonzero_product());
    }

    #[test]
    fn truncated_polynomial_products() {
        let a = truncated_polynomials(3, 1).unwrap().derived();
        let x = unit_vector(3, 1);
        // x·d(x) = x·x
        assert_eq!(a.prec(&x, &x), unit_vector(3, 2));
        assert_eq!(a.succ(&x, &x), unit_vector(3, 2));
        assert!(a.commutator_algebra().is_zero());
    }

    #[test]
    fn plain_derivative_is_not_a_derivation_mod_x3() {
        // x·x² = 0 but d(x)·x² + x·d(x²) = 3x²
        let err = truncated_polynomials(3, 0).unwrap_err();
        assert!(
            matches!(err, Error::InvalidAlgebra(ref f) if f.iter().any(|m| m.contains("Leibniz")))
        );
    }

    #[test]
    fn assoc_validation() {
        let mut mult = vec![Rational::zero(); 1];
        mult[0] = int(1);
        // d(1) = 1 breaks Leibniz
        let err = AssocDerAlgebra::new(vec!["1".into()], mult, ints(&[1])).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(_)));
    }

    #[test]
    fn closures() {
        let a = matrix_inner(3, &ints(&[0, 1, 2])).unwrap();
        assert_eq!(a.ideal_closure(&zero_vector(9)).dimension(), 0);
        assert!(a.ideal_closure(&unit_vector(9, 1)).is_full());
        let z = DasAlgebra::zero(4);
        let v = ints(&[1, 2, 0, -1]);
        let c = z.ideal_closure(&v);
        assert_eq!(c.dimension(), 1);
        assert!(c.contains(&v));
    }

    #[test]
    fn simplicity() {
        assert!(matrix_inner(3, &ints(&[0, 1, 2])).unwrap().is_simple());
        assert!(!matrix_inner(3, &ints(&[0, 0, 0])).unwrap().is_simple());
        // computed by the closure; the n = 2 case is not covered by the
        // general argument that needs a third index
        assert!(m2().is_simple());
    }

    #[test]
    fn commutators() {
        assert!(DasAlgebra::zero(2).commutator_algebra().is_zero());
        let b = m2().commutator_algebra();
        assert_eq!(b.bracket_basis(E11, E12), ints(&[0, -1, 0, 0]).as_slice());
        let e22 = unit_vector(4, E22);
        let e21 = unit_vector(4, E21);
        // [e22, e21] = e22 ≺ e21 - e21 ≻ e22 = e22 e21 - e21 e22 = e21
        assert_eq!(b.bracket(&e22, &e21), ints(&[0, 0, 1, 0]));
    }

    #[test]
    fn evaluation() {
        let assoc = matrix_assoc(2, &ints(&[0, 1])).unwrap();
        let a = assoc.derived();
        let x = vec![int(1), ratio(1, 2), int(0), int(-3)];
        let y = vec![int(2), int(0), int(7), ratio(-1, 3)];
        let t = DasTerm::prec(DasTerm::leaf(0), DasTerm::leaf(1));
        let asg = BTreeMap::from([(Generator(0), x.clone()), (Generator(1), y.clone())]);
        assert_eq!(
            a.evaluate(&t, &asg).unwrap(),
            assoc.mul(&x, &assoc.derive(&y))
        );
        assert_eq!(a.evaluate(&DasTerm::leaf(0), &asg).unwrap(), x);
        assert!(matches!(
            a.evaluate(&DasTerm::leaf(5), &asg),
            Err(Error::MissingAssignment(_))
        ));
    }

    #[test]
    fn spec_round_trip() {
        let a = m2();
        let json = a.to_spec().to_json();
        let back = AlgebraSpec::from_json(&json).unwrap().build().unwrap();
        assert_eq!(back, a);
        let assoc = r#"{"names": ["1", "x"], "assoc": {"mult": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]], "der": [["0","0"],["0","1"]]}}"#;
        let b = AlgebraSpec::from_json(assoc).unwrap().build().unwrap();
        assert_eq!(b, truncated_polynomials(2, 1).unwrap().derived());
        assert!(AlgebraSpec::from_json(r#"{"dim": 1}"#)
            .unwrap()
            .build()
            .is_err());
    }
}
