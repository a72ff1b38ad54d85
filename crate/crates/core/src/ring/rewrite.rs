//! Normal forms in `k[Δ]` by rewriting `Tᵢ^βᵢ → −T₀^β₀ − λᵢT₁^β₁`.
//!
//! The patterns live on disjoint blocks, so they are pairwise coprime and the
//! relations form a Gröbner basis for any order in which they lead. An
//! elimination order (variables of blocks `≥ 2` first) is such an order:
//! every replacement is free of those variables.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use super::{Monomial, Polynomial};
use crate::error::Error;
use crate::trinomial::TrinomialData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    /// `i ≥ 2`.
    pub block: usize,
    pub pattern: Monomial,
    pub replacement: Polynomial,
}

impl Rule {
    /// `pattern − replacement`, the defining trinomial.
    pub fn relation(&self) -> Polynomial {
        &Polynomial::from_monomial(self.pattern.clone()) - &self.replacement
    }
}

/// Block elimination order: first the part in blocks `≥ 2` (total degree,
/// then lexicographic), then the part in blocks 0 and 1 likewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    /// Number of variables in blocks 0 and 1.
    head: usize,
}

impl EliminationOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let key = |m: &Monomial, tail: bool| -> (u64, Vec<u32>) {
            let e = if tail {
                &m.exponents()[self.head..]
            } else {
                &m.exponents()[..self.head]
            };
            (e.iter().map(|&x| u64::from(x)).sum(), e.to_vec())
        };
        key(a, true)
            .cmp(&key(b, true))
            .then_with(|| key(a, false).cmp(&key(b, false)))
    }

    pub fn leading_monomial<'a>(&self, p: &'a Polynomial) -> Option<&'a Monomial> {
        p.monomials().max_by(|a, b| self.compare(a, b))
    }
}

/// The rewrite rules of one data set; immutable once built.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    nvars: usize,
    rules: Vec<Rule>,
    order: EliminationOrder,
}

impl RewriteSystem {
    pub fn new(data: &TrinomialData) -> Self {
        let n = data.n();
        let u = Polynomial::from_monomial(Monomial::new(data.block_exponents(0)));
        let v = Polynomial::from_monomial(Monomial::new(data.block_exponents(1)));
        let rules = (2..=data.r())
            .map(|i| Rule {
                block: i,
                pattern: Monomial::new(data.block_exponents(i)),
                replacement: -(&u + &v.scale(data.lambda_of(i))),
            })
            .collect();
        RewriteSystem {
            nvars: n,
            rules,
            order: EliminationOrder {
                head: data.block(0).len() + data.block(1).len(),
            },
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn order(&self) -> &EliminationOrder {
        &self.order
    }

    /// The defining trinomials `T₀^β₀ + λᵢT₁^β₁ + Tᵢ^βᵢ`, `i = 2..r`.
    pub fn relations(&self) -> Vec<Polynomial> {
        self.rules.iter().map(Rule::relation).collect()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.rules.iter().all(|rule| !rule.pattern.divides(m))
    }

    fn check(&self, f: &Polynomial) -> Result<(), Error> {
        if f.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        Ok(())
    }

    /// Fully reduced representative: every pattern power is replaced at once.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, Error> {
        self.check(f)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in f.terms() {
            let mut rest = m.clone();
            let mut factor = Polynomial::one(self.nvars);
            for rule in &self.rules {
                let q = rule
                    .pattern
                    .exponents()
                    .iter()
                    .zip(rest.exponents())
                    .filter(|(p, _)| **p > 0)
                    .map(|(p, e)| e / p)
                    .min()
                    .unwrap_or(0);
                if q > 0 {
                    rest = rule
                        .pattern
                        .pow(q)
                        .quotient_of(&rest)
                        .expect("pattern power divides");
                    factor = &factor * &rule.replacement.pow(q);
                }
            }
            out = &out + &factor.mul_monomial(&rest, c);
        }
        Ok(out)
    }

    /// Reduction one rule application at a time. `choose` receives the
    /// number of available (term, rule) redexes and picks one.
    pub fn normal_form_stepwise(
        &self,
        f: &Polynomial,
        mut choose: impl FnMut(usize) -> usize,
    ) -> Result<Polynomial, Error> {
        self.check(f)?;
        let mut p = f.clone();
        loop {
            let redexes: Vec<(Monomial, BigRational, usize)> = p
                .terms()
                .flat_map(|(m, c)| {
                    self.rules
                        .iter()
                        .enumerate()
                        .filter(|(_, rule)| rule.pattern.divides(m))
                        .map(move |(k, _)| (m.clone(), c.clone(), k))
                })
                .collect();
            if redexes.is_empty() {
                return Ok(p);
            }
            let (m, c, k) = &redexes[choose(redexes.len()) % redexes.len()];
            let rule = &self.rules[*k];
            let rest = rule.pattern.quotient_of(m).expect("pattern divides");
            p.add_term(m.clone(), -c.clone());
            p = &p + &rule.replacement.mul_monomial(&rest, c);
        }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, Error> {
        self.check(g)?;
        self.normal_form(&(f + g))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, Error> {
        self.check(f)?;
        self.check(g)?;
        self.normal_form(&(f * g))
    }

    /// S-polynomial of two rules under the elimination order.
    pub fn s_polynomial(&self, a: usize, b: usize) -> Polynomial {
        let (ga, gb) = (self.rules[a].relation(), self.rules[b].relation());
        let la = self
            .order
            .leading_monomial(&ga)
            .expect("nonzero relation")
            .clone();
        let lb = self
            .order
            .leading_monomial(&gb)
            .expect("nonzero relation")
            .clone();
        let lcm = Monomial::new(
            la.exponents()
                .iter()
                .zip(lb.exponents())
                .map(|(x, y)| *x.max(y))
                .collect(),
        );
        let ca = ga.coefficient(&la).recip();
        let cb = gb.coefficient(&lb).recip();
        let ta = la.quotient_of(&lcm).expect("divides lcm");
        let tb = lb.quotient_of(&lcm).expect("divides lcm");
        &ga.mul_monomial(&ta, &ca) - &gb.mul_monomial(&tb, &cb)
    }

    /// Buchberger's criterion, computed: every pattern leads its relation and
    /// every S-polynomial reduces to zero.
    pub fn is_groebner_basis(&self) -> bool {
        let leads = self.rules.iter().all(|rule| {
            let rel = rule.relation();
            self.order.leading_monomial(&rel) == Some(&rule.pattern)
                && rel.coefficient(&rule.pattern).is_one()
        });
        leads
            && (0..self.rules.len()).all(|a| {
                (a + 1..self.rules.len()).all(|b| {
                    self.normal_form(&self.s_polynomial(a, b))
                        .map(|p| p.is_zero())
                        .unwrap_or(false)
                })
            })
    }
}
