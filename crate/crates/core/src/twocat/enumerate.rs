//! Exhaustive enumeration and seeded sampling of transformations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::closure::{greatest_below, least_above, Constraints};
use super::functor::ValueFunctor;
use super::transformation::{Kind, Space, Table, Transformation};
use super::TwoCatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateMode {
    Exhaustive,
    Sampled,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            samples: 1000,
            seed: 0,
        }
    }
}

impl CheckOptions {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone)]
pub struct Candidates<V> {
    pub mode: CandidateMode,
    pub items: Vec<Transformation<V>>,
}

/// Exhaustive enumeration is used when every `FA` and `GA` has at most this
/// many elements …
pub const EXHAUSTIVE_ELEMENT_LIMIT: u128 = 4;
/// … and the number of monotone families does not exceed this bound.
pub const EXHAUSTIVE_CANDIDATE_LIMIT: u128 = 1_000_000;

impl<G: ValueFunctor> Space<G> {
    /// All monotone maps `FA → GA`, if `GA` is enumerable.
    pub fn monotone_maps(&self, a: usize) -> Option<Vec<Vec<G::Value>>> {
        let values = self.target().elements(a)?;
        let fa = self.source().poset(a);
        let n = fa.len();
        let mut out = Vec::new();
        let mut current: Vec<G::Value> = Vec::with_capacity(n);
        fn go<G: ValueFunctor>(
            target: &G,
            a: usize,
            fa: &crate::order::FinitePoset,
            values: &[G::Value],
            current: &mut Vec<G::Value>,
            out: &mut Vec<Vec<G::Value>>,
        ) {
            let i = current.len();
            if i == fa.len() {
                out.push(current.clone());
                return;
            }
            for v in values {
                let ok = (0..i).all(|j| {
                    (!fa.leq(j, i) || target.leq(a, &current[j], v))
                        && (!fa.leq(i, j) || target.leq(a, v, &current[j]))
                });
                if ok {
                    current.push(v.clone());
                    go(target, a, fa, values, current, out);
                    current.pop();
                }
            }
        }
        go(&*self.target().clone(), a, fa, &values, &mut current, &mut out);
        Some(out)
    }

    /// Whether exhaustive enumeration is admissible for this space.
    pub fn exhaustive_possible(&self) -> bool {
        let cat = self.category();
        let small = (0..cat.object_count()).all(|a| {
            self.source().size(a) as u128 <= EXHAUSTIVE_ELEMENT_LIMIT
                && self
                    .target()
                    .element_count(a)
                    .is_some_and(|c| c <= EXHAUSTIVE_ELEMENT_LIMIT)
        });
        small && self.monotone_family_count().is_some_and(|c| c <= EXHAUSTIVE_CANDIDATE_LIMIT)
    }

    fn monotone_family_count(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for a in 0..self.category().object_count() {
            total = total.checked_mul(self.monotone_maps(a)?.len() as u128)?;
        }
        Some(total)
    }

    /// All transformations of the given kind. Fails when the space is too large.
    pub fn enumerate_kind(&self, kind: Kind) -> Result<Vec<Transformation<G::Value>>, TwoCatError> {
        if !self.exhaustive_possible() {
            return Err(TwoCatError::TooLarge(
                "exhaustive enumeration limited to 4-element posets and 10^6 families".into(),
            ));
        }
        let per_object: Vec<Vec<Vec<G::Value>>> = (0..self.category().object_count())
            .map(|a| self.monotone_maps(a).expect("checked enumerable"))
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; per_object.len()];
        if per_object.iter().any(|m| m.is_empty()) {
            return Ok(out);
        }
        loop {
            let t = Transformation::from_raw(
                idx.iter()
                    .enumerate()
                    .map(|(a, &i)| per_object[a][i].clone())
                    .collect(),
            );
            if self.is_kind(&t, kind) {
                out.push(t);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(out);
                }
                idx[k] += 1;
                if idx[k] < per_object[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    /// A random monotone family: random values made monotone by taking, at
    /// each element, the join of the values below it.
    pub fn random_family<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Table<G>> {
        let target = self.target();
        let mut out = Vec::new();
        for a in 0..self.category().object_count() {
            let fa = self.source().poset(a);
            let raw: Vec<G::Value> = (0..fa.len())
                .map(|_| target.random_element(a, rng))
                .collect::<Option<_>>()?;
            out.push(
                (0..fa.len())
                    .map(|y| {
                        (0..fa.len())
                            .filter(|&x| fa.leq(x, y))
                            .fold(target.bottom(a), |acc, x| target.join(a, &acc, &raw[x]))
                    })
                    .collect(),
            );
        }
        Some(out)
    }

    /// Random members of the given kind, obtained by projecting random monotone
    /// families onto the kind (alternately from above and from below).
    /// Projections that do not exist are skipped.
    pub fn sample_kind<R: Rng + ?Sized>(
        &self,
        kind: Kind,
        count: usize,
        rng: &mut R,
    ) -> Vec<Transformation<G::Value>> {
        let constraints = Constraints::of_kind(kind, self.sigma(), self.category());
        let mut out = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count && attempts < 4 * count + 8 {
            attempts += 1;
            let Some(start) = self.random_family(rng) else { break };
            let projected = if attempts % 2 == 0 {
                greatest_below(self.source(), &**self.target(), start, &constraints)
            } else {
                least_above(self.source(), &**self.target(), start, &constraints)
            };
            if let Ok(t) = projected {
                out.push(Transformation::from_raw(t));
            }
        }
        out
    }

    /// Exhaustive candidates when admissible, otherwise `opts.samples` samples.
    pub fn candidates(
        &self,
        kind: Kind,
        opts: &CheckOptions,
    ) -> Result<Candidates<G::Value>, TwoCatError> {
        if self.exhaustive_possible() {
            return Ok(Candidates {
                mode: CandidateMode::Exhaustive,
                items: self.enumerate_kind(kind)?,
            });
        }
        if opts.samples == 0 {
            return Ok(Candidates {
                mode: CandidateMode::Skipped,
                items: Vec::new(),
            });
        }
        if !self.target().supports_fixpoints() {
            return Err(TwoCatError::BackendUnsupported(
                "sampling needs an enumerable value backend",
            ));
        }
        let mut rng = opts.rng();
        Ok(Candidates {
            mode: CandidateMode::Sampled,
            items: self.sample_kind(kind, opts.samples, &mut rng),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn t0_has_nine_families() {
        let s = t0_space();
        assert_eq!(s.enumerate_kind(Kind::General).unwrap().len(), 9);
        // lax: τ_B(y) ≤ τ_A(y)
        assert_eq!(s.enumerate_kind(Kind::Lax).unwrap().len(), 6);
        assert_eq!(s.enumerate_kind(Kind::Strict).unwrap().len(), 3);
    }

    #[test]
    fn samples_have_the_requested_kind() {
        let s = t0_space_sigma_all();
        let mut rng = CheckOptions::default().rng();
        for kind in [Kind::General, Kind::Lax, Kind::Colax, Kind::Strict] {
            let items = s.sample_kind(kind, 20, &mut rng);
            assert!(!items.is_empty());
            assert!(items.iter().all(|t| s.is_kind(t, kind)));
        }
    }
}
