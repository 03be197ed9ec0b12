//! Rank experiments over multilinear components: injectivity of `τ`, and
//! independence of `≺`-only, `≻`-only and commutator monomials.

use crate::dasterm::{
    enumerate_commutators, enumerate_multilinear, enumerate_multilinear_with, rank_of_span, tau,
    tau_poly, Op,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankExperiment {
    pub label: &'static str,
    pub terms: usize,
    pub rank: usize,
}

impl RankExperiment {
    pub fn independent(&self) -> bool {
        self.terms == self.rank
    }
}

/// Rank of `τ` over all multilinear terms of degree `n`.
pub fn tau_rank(n: usize) -> RankExperiment {
    let images: Vec<_> = enumerate_multilinear(n).iter().map(tau).collect();
    RankExperiment {
        label: "all terms",
        terms: images.len(),
        rank: rank_of_span(&images),
    }
}

pub fn independence_experiments(n: usize) -> Vec<RankExperiment> {
    let single = |label, op| {
        let images: Vec<_> = enumerate_multilinear_with(n, &[op])
            .iter()
            .map(tau)
            .collect();
        RankExperiment {
            label,
            terms: images.len(),
            rank: rank_of_span(&images),
        }
    };
    let commutators: Vec<_> = enumerate_commutators(n).iter().map(tau_poly).collect();
    vec![
        single("prec-only", Op::Prec),
        single("succ-only", Op::Succ),
        RankExperiment {
            label: "commutator",
            terms: commutators.len(),
            rank: rank_of_span(&commutators),
        },
    ]
}
