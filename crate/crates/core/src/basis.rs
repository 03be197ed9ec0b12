//! The weight −1 words of the free differential algebra, which are exactly
//! the `τ`-images spanning the free algebra with products `≺`, `≻`, and the
//! constructive inverse of `τ` on them.

use std::collections::BTreeMap;

use num_traits::One;

use crate::dasterm::{permutations, tau, tau_poly, DasPoly, DasTerm};
use crate::diffalg::{DiffLetter, DiffMonomial, DiffPoly, Generator};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::rational::Rational;

/// Weak compositions of `total` into `parts` non-negative parts, in
/// lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

fn word(gens: &[Generator], orders: &[u32]) -> DiffMonomial {
    DiffMonomial::new(
        gens.iter()
            .zip(orders)
            .map(|(&g, &o)| DiffLetter::new(g, o))
            .collect(),
    )
}

/// Weight −1 words of length exactly `length` over generators `0..alphabet_size`.
pub fn weight_minus1_words_of_length(alphabet_size: usize, length: usize) -> Vec<DiffMonomial> {
    if length == 0 || alphabet_size == 0 {
        return vec![];
    }
    let comps = compositions(length as u32 - 1, length);
    let mut out = Vec::new();
    let mut gens = vec![Generator(0); length];
    loop {
        for c in &comps {
            out.push(word(&gens, c));
        }
        // odometer over generator sequences
        let mut i = length;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (gens[i].0 as usize) + 1 < alphabet_size {
                gens[i].0 += 1;
                break;
            }
            gens[i] = Generator(0);
        }
    }
}

/// All nonempty weight −1 words of length at most `max_length`.
pub fn enumerate_weight_minus1(alphabet_size: usize, max_length: usize) -> Vec<DiffMonomial> {
    (1..=max_length)
        .flat_map(|k| weight_minus1_words_of_length(alphabet_size, k))
        .collect()
}

/// Splits a word of weight `-m < 0` into `m` factors of weight −1, cutting
/// the shortest prefix of weight −1 each time.
pub fn split_negative(u: &DiffMonomial) -> Result<Vec<DiffMonomial>> {
    let total = u.weight();
    if total >= 0 {
        return Err(Error::NonNegativeWeight(total));
    }
    let mut factors = Vec::new();
    let mut start = 0;
    let mut acc = 0i64;
    let letters = u.letters();
    for (i, l) in letters.iter().enumerate() {
        if factors.len() as i64 == -total - 1 {
            break;
        }
        acc += l.weight();
        if acc == -1 {
            factors.push(u.slice(start, i + 1));
            start = i + 1;
            acc = 0;
        }
    }
    factors.push(u.slice(start, letters.len()));
    Ok(factors)
}

/// Leftmost, then shortest, proper subword of length > 1 and weight −1 in a
/// weight −1 word with at least two letters of positive order. Returns the
/// half-open range `(start, end)`.
pub fn find_weight_minus1_subword(u: &DiffMonomial) -> Result<(usize, usize)> {
    let positive = u.letters().iter().filter(|l| l.order > 0).count();
    if u.weight() != -1 || positive < 2 {
        return Err(Error::SubwordPrecondition);
    }
    let k = u.len();
    for start in 0..k {
        let mut acc = 0i64;
        for end in start + 1..=k {
            acc += u.letters()[end - 1].weight();
            if end - start > 1 && end - start < k && acc == -1 {
                return Ok((start, end));
            }
        }
    }
    Err(Error::SubwordPrecondition)
}

/// `x_1 ≺ (x_2 ≺ ... (x_{i-1} ≺ ((x_i ≻ x_{i+1}) ≻ ... ≻ x_k)))` for the word
/// whose only derivative sits at position `i`.
fn single_derivative_term(gens: &[Generator], pos: usize) -> DasTerm {
    let mut inner = DasTerm::Leaf(gens[pos]);
    for &g in &gens[pos + 1..] {
        inner = DasTerm::succ(inner, DasTerm::Leaf(g));
    }
    for &g in gens[..pos].iter().rev() {
        inner = DasTerm::prec(DasTerm::Leaf(g), inner);
    }
    inner
}

/// A polynomial `f` with `τ(f) = u`, by induction on the length of `u`.
pub fn tau_preimage(u: &DiffMonomial) -> Result<DasPoly> {
    let wt = u.weight();
    if wt != -1 {
        return Err(Error::WrongWeight {
            expected: -1,
            found: wt,
        });
    }
    let mut memo = BTreeMap::new();
    Ok(preimage(u, &mut memo))
}

fn preimage(u: &DiffMonomial, memo: &mut BTreeMap<DiffMonomial, DasPoly>) -> DasPoly {
    if let Some(hit) = memo.get(u) {
        return hit.clone();
    }
    let letters = u.letters();
    let positive: Vec<usize> = (0..letters.len())
        .filter(|&i| letters[i].order > 0)
        .collect();
    let result = match positive.as_slice() {
        [] => DasPoly::from(DasTerm::Leaf(letters[0].gen)),
        [pos] => {
            let gens: Vec<Generator> = letters.iter().map(|l| l.gen).collect();
            let w = single_derivative_term(&gens, *pos);
            let remainder = &DiffPoly::monomial(u.clone()) - &tau(&w);
            let mut out = DasPoly::from(w);
            for (m, c) in remainder.terms() {
                out.add_scaled(c, &preimage(m, memo));
            }
            out
        }
        _ => {
            let (start, end) = find_weight_minus1_subword(u).expect("preconditions checked");
            let inner = preimage(&u.slice(start, end), memo);
            let fresh = Generator(u.max_generator().map_or(0, |g| g.0 + 1));
            let contracted = u
                .slice(0, start)
                .multiply(&DiffMonomial::letter(fresh, 0))
                .multiply(&u.slice(end, u.len()));
            let outer = preimage(&contracted, memo);
            outer.substitute(&BTreeMap::from([(fresh, inner)]))
        }
    };
    memo.insert(u.clone(), result.clone());
    result
}

/// Weight −1 words using each of `0..n` exactly once.
pub fn multilinear_basis_words(n: usize) -> Vec<DiffMonomial> {
    let comps = compositions(n as u32 - 1, n);
    let mut out = Vec::new();
    for perm in permutations(n) {
        let gens: Vec<Generator> = perm.into_iter().map(Generator).collect();
        for c in &comps {
            out.push(word(&gens, c));
        }
    }
    out
}

/// Dimension of the degree-`n` multilinear component, counted by explicit
/// enumeration of basis words.
pub fn dim_das(n: usize) -> usize {
    assert!(n >= 1, "degree must be positive");
    multilinear_basis_words(n).len()
}

/// Multilinear dimension of the Novikov operad: basis words with the letters
/// in the fixed order `x_1 ... x_n`.
pub fn dim_nov(n: usize) -> usize {
    assert!(n >= 1, "degree must be positive");
    multilinear_basis_words(n)
        .iter()
        .filter(|u| {
            u.letters()
                .iter()
                .enumerate()
                .all(|(i, l)| l.gen.0 as usize == i)
        })
        .count()
}

/// Rank of `{τ^{-1}(u)}` over the degree-`n` multilinear basis words, taken
/// in the space of terms.
pub fn preimage_rank(n: usize) -> usize {
    let mut echelon: SparseEchelon<DasTerm> = SparseEchelon::new();
    for u in multilinear_basis_words(n) {
        let f = tau_preimage(&u).expect("basis words have weight -1");
        echelon.insert(f.terms().map(|(t, c)| (t.clone(), c.clone())).collect());
    }
    echelon.rank()
}

/// Checks `τ(τ^{-1}(u)) = u`.
pub fn preimage_round_trips(u: &DiffMonomial) -> Result<bool> {
    let f = tau_preimage(u)?;
    Ok(tau_poly(&f) == DiffPoly::term(u.clone(), Rational::one()))
}
