//! Exact distribution and moments of the total weight via the generating
//! function recursion.
//!
//! For an integer-valued weight, `h_{l,r}(z)` counts the triangulations of
//! the sub-polygon on `(l, r)` by total weight:
//!
//! ```text
//! h_{l,r}(z) = Σ_{j=l+1}^{r-1} z^{f(l,j,r)} h_{l,j}(z) h_{j,r}(z)
//! h_{l,l+1} = 1,   h_{l,l+2} = z^{f(l,l+1,l+2)}
//! ```
//!
//! so `h_{1,n}(1) = C_{n-2}` and dividing the coefficients by `C_{n-2}`
//! gives the exact distribution. Means and variances come from the first
//! and second factorial moments of the coefficients. Every interval pair
//! `(l, r)` is memoized as-is, which keeps the recursion valid for weights
//! with no shift invariance (the vertex-degree family).
//!
//! [`moments_numeric`] is the floating-point counterpart driven by the same
//! split law; it works for any codomain, including the geometric weights.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::{catalan, catalan_table, nat_to_rat, rat_int, rat_to_f64, rat_to_i64, Rat};
use crate::polygon::{PolygonSpec, TriangleRef};
use crate::weights::{WeightError, WeightSpec};

/// Exact polynomials up to this `n`; the big-rational DP is O(n^4..n^5).
pub const GF_CAP: usize = 40;
/// Interval cap for the floating-point moment recursion (f64 range safety).
pub const NUMERIC_CAP: usize = 500;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GfError {
    #[error("n={n} exceeds the generating-function cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("interval ({l},{r}) invalid for n={n}")]
    BadInterval { l: usize, r: usize, n: usize },
    #[error("weight {weight} is not integer-valued at {triangle}: {value}")]
    NonIntegerValued {
        weight: String,
        triangle: String,
        value: String,
    },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// A finitely supported Laurent polynomial in `z` with exact rational
/// coefficients. No explicit zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        ZPoly::monomial(0, rat_int(1))
    }

    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        ZPoly { coeffs }
    }

    pub fn from_coeffs(entries: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut p = ZPoly::zero();
        for (e, c) in entries {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(|| rat_int(0))
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, exp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(|| rat_int(0));
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, rhs: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (ea, ca) in self.iter() {
            for (eb, cb) in rhs.iter() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    /// Multiply by `z^exp`.
    pub fn shift(&self, exp: i64) -> ZPoly {
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + exp, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Value at `z = 1`: the coefficient sum.
    pub fn eval_one(&self) -> Rat {
        self.coeffs.values().cloned().sum()
    }

    /// `h'(1) = Σ k a_k`.
    pub fn first_moment(&self) -> Rat {
        self.iter().map(|(e, c)| rat_int(e) * c).sum()
    }

    /// `h''(1) = Σ k (k-1) a_k`.
    pub fn second_factorial_moment(&self) -> Rat {
        self.iter().map(|(e, c)| rat_int(e * (e - 1)) * c).sum()
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Exact value-to-probability table of the total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct DistTable {
    pub n: usize,
    pub weight: String,
    entries: Vec<(Rat, Rat)>,
}

impl DistTable {
    /// Build from `(value, probability)` pairs; sorts by value, drops zero
    /// masses, and checks the probabilities sum to exactly 1.
    pub fn from_entries(
        n: usize,
        weight: String,
        entries: impl IntoIterator<Item = (Rat, Rat)>,
    ) -> Self {
        let mut entries: Vec<(Rat, Rat)> =
            entries.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let total: Rat = entries.iter().map(|(_, p)| p.clone()).sum();
        assert_eq!(total, rat_int(1), "distribution must sum to 1");
        assert!(entries.iter().all(|(_, p)| p.is_positive()));
        DistTable { n, weight, entries }
    }

    /// `(value, probability)` pairs sorted by value ascending.
    pub fn entries(&self) -> &[(Rat, Rat)] {
        &self.entries
    }

    pub fn prob_of(&self, value: &Rat) -> Rat {
        self.entries
            .iter()
            .find(|(v, _)| v == value)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| rat_int(0))
    }

    pub fn mean(&self) -> Rat {
        self.entries.iter().map(|(v, p)| v * p).sum()
    }

    pub fn variance(&self) -> Rat {
        let mean = self.mean();
        let second: Rat = self.entries.iter().map(|(v, p)| v * v * p).sum();
        second - mean.clone() * mean
    }
}

/// Mean and variance of the total weight, exact when every step stayed in
/// rational arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum MomentReport {
    Exact { mean: Rat, variance: Rat },
    Numeric { mean: f64, variance: f64 },
}

impl MomentReport {
    pub fn is_exact(&self) -> bool {
        matches!(self, MomentReport::Exact { .. })
    }

    pub fn mean_f64(&self) -> f64 {
        match self {
            MomentReport::Exact { mean, .. } => rat_to_f64(mean),
            MomentReport::Numeric { mean, .. } => *mean,
        }
    }

    pub fn variance_f64(&self) -> f64 {
        match self {
            MomentReport::Exact { variance, .. } => rat_to_f64(variance),
            MomentReport::Numeric { variance, .. } => *variance,
        }
    }

    pub fn as_exact(&self) -> Option<(&Rat, &Rat)> {
        match self {
            MomentReport::Exact { mean, variance } => Some((mean, variance)),
            MomentReport::Numeric { .. } => None,
        }
    }
}

fn exponent_of(f: &WeightSpec, n: usize, tr: TriangleRef) -> Result<i64, GfError> {
    let v = f.eval_exact(n, tr)?;
    rat_to_i64(&v).ok_or_else(|| GfError::NonIntegerValued {
        weight: f.name(),
        triangle: tr.to_string(),
        value: v.to_string(),
    })
}

/// `h_{l,r}(z)` for the integer-valued weight `f` on `P_n`, by the interval
/// DP with base cases `h_{l,l+1} = 1` and `h_{l,l+2} = z^{f(l,l+1,l+2)}`.
pub fn h_polynomial(n: usize, l: usize, r: usize, f: &WeightSpec) -> Result<ZPoly, GfError> {
    if n > GF_CAP {
        return Err(GfError::CapExceeded { n, cap: GF_CAP });
    }
    if l < 1 || r > n || l >= r {
        return Err(GfError::BadInterval { l, r, n });
    }
    let table = h_table(n, l, r, f)?;
    Ok(table[&(l, r)].clone())
}

/// All `h_{a,b}` for `l <= a < b <= r`, computed once by ascending interval
/// length.
fn h_table(
    n: usize,
    l: usize,
    r: usize,
    f: &WeightSpec,
) -> Result<BTreeMap<(usize, usize), ZPoly>, GfError> {
    let mut h: BTreeMap<(usize, usize), ZPoly> = BTreeMap::new();
    for a in l..r {
        h.insert((a, a + 1), ZPoly::one());
    }
    for len in 2..=r - l {
        for a in l..=r - len {
            let b = a + len;
            let poly = if len == 2 {
                let e = exponent_of(
                    f,
                    n,
                    TriangleRef {
                        l: a,
                        j: a + 1,
                        r: b,
                    },
                )?;
                ZPoly::monomial(e, rat_int(1))
            } else {
                let mut acc = ZPoly::zero();
                for j in a + 1..b {
                    let e = exponent_of(f, n, TriangleRef { l: a, j, r: b })?;
                    let prod = h[&(a, j)].mul(&h[&(j, b)]);
                    acc = acc.add(&prod.shift(e));
                }
                acc
            };
            h.insert((a, b), poly);
        }
    }
    Ok(h)
}

/// Exact distribution of the total weight: the coefficients of `h_{1,n}`
/// divided by `C_{n-2}`.
pub fn distribution(n: usize, f: &WeightSpec) -> Result<DistTable, GfError> {
    let h = h_polynomial(n, 1, n, f)?;
    let total = nat_to_rat(&catalan(n - 2));
    let entries = h
        .iter()
        .map(|(e, c)| (rat_int(e), c / total.clone()))
        .collect::<Vec<_>>();
    Ok(DistTable::from_entries(n, f.name(), entries))
}

/// Exact mean and variance from the factorial moments of `h_{1,n}`:
/// `E = h'(1)/C`, `Var = (h'(1) + h''(1))/C - (h'(1)/C)^2`.
pub fn moments_exact(n: usize, f: &WeightSpec) -> Result<MomentReport, GfError> {
    let h = h_polynomial(n, 1, n, f)?;
    let total = nat_to_rat(&catalan(n - 2));
    let m1 = h.first_moment() / total.clone();
    let m2f = h.second_factorial_moment() / total;
    let variance = m2f.clone() + m1.clone() - m1.clone() * m1.clone();
    Ok(MomentReport::Exact { mean: m1, variance })
}

/// Floating-point mean and variance over all intervals, for any codomain.
///
/// Mean follows `m(l,r) = Σ_j μ(j) (f + m(l,j) + m(j,r))`; variance uses the
/// law of total variance,
/// `v(l,r) = Σ_j μ(j) (v(l,j) + v(j,r)) + Σ_j μ(j) (e_j - m(l,r))^2` with
/// `e_j = f + m(l,j) + m(j,r)`, which keeps it nonnegative and lets exactly
/// constant statistics (the inradius sum) come out at ~1e-30 rather than the
/// 1e-16 cancellation noise of the raw second moment.
pub fn moments_numeric(
    n: usize,
    f: &WeightSpec,
    geom: Option<&PolygonSpec>,
) -> Result<MomentReport, GfError> {
    if n > NUMERIC_CAP {
        return Err(GfError::CapExceeded {
            n,
            cap: NUMERIC_CAP,
        });
    }
    if n < 3 {
        return Err(GfError::BadInterval { l: 1, r: n, n });
    }
    let cats = catalan_table(n - 1);
    let catf: Vec<f64> = cats
        .iter()
        .map(|c| c.to_f64().expect("Catalan fits in f64 below the cap"))
        .collect();
    // mu[len][j - l - 1] for an interval of length len = r - l
    let mu: Vec<Vec<f64>> = (0..=n - 1)
        .map(|len| {
            if len < 2 {
                Vec::new()
            } else {
                (1..len)
                    .map(|k| catf[k - 1] * catf[len - k - 1] / catf[len - 1])
                    .collect()
            }
        })
        .collect();

    let idx = |l: usize, r: usize| l * (n + 1) + r;
    let mut mean = vec![0.0f64; (n + 1) * (n + 1)];
    let mut var = vec![0.0f64; (n + 1) * (n + 1)];
    let fval = |l: usize, j: usize, r: usize| -> Result<f64, GfError> {
        Ok(f.eval(n, TriangleRef { l, j, r }, geom)?.to_f64())
    };

    #[allow(clippy::needless_range_loop)] // mu rows are keyed by interval length
    for len in 2..=n - 1 {
        for l in 1..=n - len {
            let r = l + len;
            if len == 2 {
                mean[idx(l, r)] = fval(l, l + 1, r)?;
                continue;
            }
            let mut contributions = Vec::with_capacity(len - 1);
            let mut m = 0.0;
            for j in l + 1..r {
                let e = fval(l, j, r)? + mean[idx(l, j)] + mean[idx(j, r)];
                let w = mu[len][j - l - 1];
                m += w * e;
                contributions.push((w, e, var[idx(l, j)] + var[idx(j, r)]));
            }
            let v = contributions
                .iter()
                .map(|(w, e, subvar)| w * (subvar + (e - m) * (e - m)))
                .sum();
            mean[idx(l, r)] = m;
            var[idx(l, r)] = v;
        }
    }

    Ok(MomentReport::Numeric {
        mean: mean[idx(1, n)],
        variance: var[idx(1, n)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::weights::Classification;
    use proptest::prelude::*;

    fn poly(entries: &[(i64, i64)]) -> ZPoly {
        ZPoly::from_coeffs(entries.iter().map(|&(e, c)| (e, rat_int(c))))
    }

    #[test]
    fn h_polynomial_examples() {
        let h = h_polynomial(4, 1, 4, &WeightSpec::ears()).unwrap();
        assert_eq!(h, poly(&[(2, 2)]));

        let h = h_polynomial(5, 1, 5, &WeightSpec::degree_vertex1()).unwrap();
        assert_eq!(h, poly(&[(1, 2), (2, 2), (3, 1)]));

        let h = h_polynomial(5, 1, 5, &WeightSpec::blue_count(1)).unwrap();
        assert_eq!(h, poly(&[(1, 1), (2, 3), (3, 1)]));
    }

    #[test]
    fn h_at_one_is_catalan() {
        for n in 4..=12 {
            for f in [
                WeightSpec::const_one(),
                WeightSpec::one_side(),
                WeightSpec::ears(),
                WeightSpec::degree_vertex1(),
                WeightSpec::blue_sum(),
                WeightSpec::blue_count(1),
                WeightSpec::blue_count(2),
            ] {
                let h = h_polynomial(n, 1, n, &f).unwrap();
                assert_eq!(h.eval_one(), nat_to_rat(&catalan(n - 2)), "n={n} f={f}");
                // integer nonnegative weights: exponents >= 0, integer coeffs
                for (e, c) in h.iter() {
                    assert!(e >= 0);
                    assert!(c.is_integer() && c.is_positive());
                }
            }
        }
    }

    #[test]
    fn distribution_examples() {
        let d = distribution(6, &WeightSpec::ears()).unwrap();
        assert_eq!(
            d.entries(),
            &[(rat_int(2), rat(6, 7)), (rat_int(3), rat(1, 7))]
        );

        let d = distribution(5, &WeightSpec::one_side()).unwrap();
        assert_eq!(d.entries(), &[(rat_int(1), rat_int(1))]);

        let d = distribution(6, &WeightSpec::one_side()).unwrap();
        assert_eq!(
            d.entries(),
            &[(rat_int(0), rat(1, 7)), (rat_int(2), rat(6, 7))]
        );

        let d = distribution(4, &WeightSpec::degree_vertex1()).unwrap();
        assert_eq!(
            d.entries(),
            &[(rat_int(1), rat(1, 2)), (rat_int(2), rat(1, 2))]
        );
    }

    #[test]
    fn moments_examples() {
        let m = moments_exact(6, &WeightSpec::ears()).unwrap();
        assert_eq!(m.as_exact().unwrap(), (&rat(15, 7), &rat(6, 49)));

        for n in 4..=10 {
            let m = moments_exact(n, &WeightSpec::const_one()).unwrap();
            assert_eq!(m.as_exact().unwrap(), (&rat_int(n as i64 - 2), &rat_int(0)));
        }

        let m = moments_exact(5, &WeightSpec::blue_count(1)).unwrap();
        assert_eq!(m.as_exact().unwrap(), (&rat_int(2), &rat(2, 5)));
    }

    #[test]
    fn non_integer_weights_are_rejected() {
        let err = h_polynomial(5, 1, 5, &WeightSpec::curious(rat_int(2))).unwrap_err();
        assert!(matches!(err, GfError::NonIntegerValued { .. }));
        let err = distribution(5, &WeightSpec::inradius()).unwrap_err();
        assert!(matches!(err, GfError::Weight(_)));
        // but the degenerate w = 1 cases are integer-valued and fine
        assert!(distribution(5, &WeightSpec::curious(rat_int(1))).is_ok());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            h_polynomial(GF_CAP + 1, 1, GF_CAP + 1, &WeightSpec::ears()),
            Err(GfError::CapExceeded { .. })
        ));
    }

    #[test]
    fn shift_invariance_lemma() {
        // part I: h(n,l,r) == h(n,l+1,r+1) whenever classify says
        // shift-invariant; part II additionally drops n for n-free weights.
        let fams = [
            WeightSpec::const_one(),
            WeightSpec::one_side(),
            WeightSpec::ears(),
            WeightSpec::blue_sum(),
            WeightSpec::blue_count(1),
        ];
        for n in 5..=9 {
            for f in &fams {
                let c = crate::weights::classify(f, n, None).unwrap();
                assert!(c.shift_invariant, "{f}");
                for l in 1..n - 1 {
                    for r in l + 1..n {
                        let a = h_polynomial(n, l, r, f).unwrap();
                        let b = h_polynomial(n, l + 1, r + 1, f).unwrap();
                        assert_eq!(a, b, "n={n} f={f} l={l} r={r}");
                    }
                }
                if c.n_free {
                    for l in 3..n {
                        let a = h_polynomial(n, l, n, f).unwrap();
                        let b = h_polynomial(n - 1, l - 1, n - 1, f).unwrap();
                        assert_eq!(a, b, "n={n} f={f} l={l}");
                    }
                }
            }
        }
        // the classify flags behind part II
        assert_eq!(
            crate::weights::classify(&WeightSpec::blue_sum(), 8, None).unwrap(),
            Classification {
                integer_valued: true,
                shift_invariant: true,
                n_free: true
            }
        );
        assert!(
            !crate::weights::classify(&WeightSpec::ears(), 8, None)
                .unwrap()
                .n_free
        );
    }

    #[test]
    fn degree_intervals_translate() {
        let f = WeightSpec::degree_vertex1();
        for n in 5..=9 {
            for l in 2..n - 1 {
                for r in l + 1..n {
                    let a = h_polynomial(n, l, r, &f).unwrap();
                    let b = h_polynomial(n, 2, r - l + 2, &f).unwrap();
                    assert_eq!(a, b, "n={n} l={l} r={r}");
                }
            }
        }
    }

    #[test]
    fn numeric_matches_exact_for_integer_weights() {
        for n in 4..=12 {
            for f in [
                WeightSpec::const_one(),
                WeightSpec::ears(),
                WeightSpec::one_side(),
                WeightSpec::degree_vertex1(),
                WeightSpec::blue_sum(),
                WeightSpec::blue_count(1),
                WeightSpec::blue_count(2),
            ] {
                let exact = moments_exact(n, &f).unwrap();
                let numeric = moments_numeric(n, &f, None).unwrap();
                let scale = exact.mean_f64().abs().max(1.0);
                assert!(
                    (exact.mean_f64() - numeric.mean_f64()).abs() / scale < 1e-10,
                    "mean n={n} f={f}"
                );
                let vscale = exact.variance_f64().abs().max(1.0);
                assert!(
                    (exact.variance_f64() - numeric.variance_f64()).abs() / vscale < 1e-10,
                    "var n={n} f={f}"
                );
            }
        }
    }

    #[test]
    fn numeric_geometric_weights() {
        let geom = PolygonSpec::regular(6).unwrap();
        let m = moments_numeric(6, &WeightSpec::inradius(), Some(&geom)).unwrap();
        // sum of inradii of any triangulation of the regular hexagon
        let expected = 3.0 * 3f64.sqrt() - 4.0;
        assert!((m.mean_f64() - expected).abs() < 1e-12);
        assert!(m.variance_f64() >= 0.0 && m.variance_f64() <= 1e-18);

        for n in [5usize, 8, 12] {
            let geom = PolygonSpec::regular(n).unwrap();
            let m = moments_numeric(n, &WeightSpec::area(), Some(&geom)).unwrap();
            let total = n as f64 / 2.0 * (2.0 * std::f64::consts::PI / n as f64).sin();
            assert!((m.mean_f64() - total).abs() < 1e-12);
            assert!(m.variance_f64() <= 1e-18);
        }

        let m = moments_numeric(6, &WeightSpec::ears(), None).unwrap();
        assert!((m.mean_f64() - 15.0 / 7.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn zpoly_ring_laws(
            a in proptest::collection::vec((-6i64..6, -9i64..9), 0..6),
            b in proptest::collection::vec((-6i64..6, -9i64..9), 0..6),
            c in proptest::collection::vec((-6i64..6, -9i64..9), 0..6),
        ) {
            let pa = ZPoly::from_coeffs(a.into_iter().map(|(e, k)| (e, rat_int(k))));
            let pb = ZPoly::from_coeffs(b.into_iter().map(|(e, k)| (e, rat_int(k))));
            let pc = ZPoly::from_coeffs(c.into_iter().map(|(e, k)| (e, rat_int(k))));
            prop_assert_eq!(pa.mul(&pb), pb.mul(&pa));
            prop_assert_eq!(pa.add(&pb), pb.add(&pa));
            prop_assert_eq!(
                pa.mul(&pb.add(&pc)),
                pa.mul(&pb).add(&pa.mul(&pc))
            );
            prop_assert_eq!(pa.mul(&pb).eval_one(), pa.eval_one() * pb.eval_one());
        }
    }
}
