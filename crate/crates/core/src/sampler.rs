//! Uniform sampling of triangulations by the recursive split construction.
//!
//! The triangle on a fixed side `(l, r)` of a uniform triangulation has its
//! apex `j` distributed as `μ(j) = C_{j-l-1} C_{r-j-1} / C_{r-l-1}`; drawing
//! `j`, emitting `(l, j, r)`, and recursing on both sides yields an exactly
//! uniform triangulation. The draw itself is performed with an exact
//! big-integer inverse CDF over the Catalan blocks — a uniform integer in
//! `[0, C_{r-l-1})` is produced by rejection sampling from 32-bit chunks —
//! so no floating point enters and uniformity is exact.
//!
//! The generator is pinned: ChaCha12, seeded with `seed_from_u64`; parallel
//! consumers use `set_stream` for independent substreams. Recursion always
//! expands the left interval `(l, j)` before the right `(j, r)`.

use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::exact::{catalan_table, nat_to_rat, rat_int, Nat, Rat};
use crate::polygon::{PolygonError, PolygonSpec, TriangleRef, Triangulation};
use crate::weights::{WeightError, WeightSpec, WeightValue};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SamplerError {
    #[error("split law needs r - l >= 2, got l={l}, r={r}")]
    IntervalTooSmall { l: usize, r: usize },
    #[error("interval [{l},{r}] out of range for n={n}")]
    IntervalOutOfRange { l: usize, r: usize, n: usize },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// The exact apex distribution on a side `(l, r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitLaw {
    l: usize,
    r: usize,
    probs: Vec<(usize, Rat)>,
}

impl SplitLaw {
    pub fn interval(&self) -> (usize, usize) {
        (self.l, self.r)
    }

    /// `(j, μ(j))` pairs for `l < j < r`, ascending in `j`.
    pub fn probs(&self) -> &[(usize, Rat)] {
        &self.probs
    }

    pub fn prob(&self, j: usize) -> Rat {
        self.probs
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| rat_int(0))
    }
}

/// `μ(j) = C_{j-l-1} C_{r-j-1} / C_{r-l-1}`, exactly; the Catalan recurrence
/// makes the normalization exact.
pub fn split_law(n: usize, l: usize, r: usize) -> Result<SplitLaw, SamplerError> {
    if l < 1 || r > n || l >= r {
        return Err(SamplerError::IntervalOutOfRange { l, r, n });
    }
    if r - l < 2 {
        return Err(SamplerError::IntervalTooSmall { l, r });
    }
    let cats = catalan_table(r - l - 1);
    let total = nat_to_rat(&cats[r - l - 1]);
    let probs = (l + 1..r)
        .map(|j| {
            let block = &cats[j - l - 1] * &cats[r - j - 1];
            (j, nat_to_rat(&block) / total.clone())
        })
        .collect();
    Ok(SplitLaw { l, r, probs })
}

/// Uniform integer in `[0, bound)` by masked 32-bit chunks plus rejection.
pub(crate) fn uniform_below(bound: &Nat, rng: &mut impl RngCore) -> Nat {
    debug_assert!(!bound.is_zero());
    if bound.is_one() {
        return Nat::zero();
    }
    let bits = bound.bits();
    let chunks = bits.div_ceil(32) as usize;
    let top_bits = bits % 32;
    let top_mask = if top_bits == 0 {
        u32::MAX
    } else {
        (1u32 << top_bits) - 1
    };
    loop {
        let mut digits = Vec::with_capacity(chunks);
        for i in 0..chunks {
            let mut d = rng.next_u32();
            if i + 1 == chunks {
                d &= top_mask;
            }
            digits.push(d);
        }
        let candidate = Nat::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Deterministic uniform sampler over the triangulations of `P_n`.
#[derive(Debug, Clone)]
pub struct TriangulationSampler {
    n: usize,
    catalans: Vec<Nat>,
    rng: ChaCha12Rng,
}

impl TriangulationSampler {
    pub fn new(n: usize, seed: u64) -> Result<Self, SamplerError> {
        Self::with_stream(n, seed, 0)
    }

    /// Independent substream `stream` of the same seed, for parallel runs.
    pub fn with_stream(n: usize, seed: u64, stream: u64) -> Result<Self, SamplerError> {
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n).into());
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Ok(TriangulationSampler {
            n,
            catalans: catalan_table(n - 2),
            rng,
        })
    }

    /// One uniform triangulation. Same state, same output.
    pub fn sample(&mut self) -> Triangulation {
        let n = self.n;
        let mut diagonals = Vec::with_capacity(n - 3);
        let mut triangles = Vec::with_capacity(n - 2);
        self.sample_interval(1, n, &mut diagonals, &mut triangles);
        Triangulation::from_parts(n, diagonals, triangles)
    }

    fn sample_interval(
        &mut self,
        l: usize,
        r: usize,
        diagonals: &mut Vec<(usize, usize)>,
        triangles: &mut Vec<TriangleRef>,
    ) {
        if r - l < 2 {
            return;
        }
        if r - l == 2 {
            triangles.push(TriangleRef { l, j: l + 1, r });
            return;
        }
        let j = self.draw_apex(l, r);
        triangles.push(TriangleRef { l, j, r });
        if j - l >= 2 {
            diagonals.push((l, j));
        }
        if r - j >= 2 {
            diagonals.push((j, r));
        }
        self.sample_interval(l, j, diagonals, triangles);
        self.sample_interval(j, r, diagonals, triangles);
    }

    /// Inverse CDF over the cumulative blocks `C_{j-l-1} C_{r-j-1}`.
    fn draw_apex(&mut self, l: usize, r: usize) -> usize {
        let bound = self.catalans[r - l - 1].clone();
        let mut u = uniform_below(&bound, &mut self.rng);
        for j in l + 1..r {
            let block = &self.catalans[j - l - 1] * &self.catalans[r - j - 1];
            if u < block {
                return j;
            }
            u -= block;
        }
        unreachable!("cumulative Catalan blocks cover [0, C_{{r-l-1}})");
    }
}

/// Sum of `f` over the triangles of `t`. Exact for exact codomains.
pub fn weight_sum(
    t: &Triangulation,
    f: &WeightSpec,
    geom: Option<&PolygonSpec>,
) -> Result<WeightValue, WeightError> {
    let mut exact = rat_int(0);
    let mut real = 0.0;
    let mut is_real = false;
    for tr in t.triangles() {
        match f.eval(t.n(), *tr, geom)? {
            WeightValue::Exact(v) => exact += v,
            WeightValue::Real(x) => {
                is_real = true;
                real += x;
            }
        }
    }
    Ok(if is_real {
        WeightValue::Real(real)
    } else {
        WeightValue::Exact(exact)
    })
}

/// A reproducible sampling run: same `(n, weight, samples, seed)` means the
/// identical sample sequence and results.
#[derive(Debug, Clone)]
pub struct SampleRun {
    pub n: usize,
    pub weight: WeightSpec,
    pub samples: u64,
    pub seed: u64,
}
