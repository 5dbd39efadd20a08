//! Closed forms: the β/λ moment machinery for shift-invariant weights, the
//! upper-triangular matrix identity behind it, the per-family formula
//! library, and the vertex-1 angle-portfolio law.
//!
//! Everything here is an independent computation path: none of it calls the
//! generating-function engine, so agreement between the two is a real
//! cross-check rather than a tautology.

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::exact::{
    binomial, catalan, catalan_table, factorial, nat_to_rat, rat, rat_int, Nat, Rat,
};
use crate::polygon::{PolygonSpec, TriangleRef};
use crate::weights::{classify, Codomain, WeightError, WeightKind, WeightSpec, WeightValue};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormulaError {
    #[error("unknown formula id {0:?}")]
    UnknownId(String),
    #[error("formula {id} is stated for n >= {min}, got n={n}")]
    OutOfRange {
        id: &'static str,
        n: usize,
        min: usize,
    },
    #[error("formula {id} needs parameter w")]
    MissingParameter { id: String },
    #[error("weight {weight} is not shift-invariant at n={n}")]
    NotShiftInvariant { weight: String, n: usize },
    #[error("no closed form applies to weight {weight}")]
    NoClosedForm { weight: String },
    #[error("l={l} out of range 1..={max} for n={n}")]
    SuffixOutOfRange { l: usize, max: usize, n: usize },
    #[error("portfolio constraint violated: {detail}")]
    PortfolioConstraint { detail: String },
    #[error("K={k} out of range 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// The pair of upper-triangular matrices whose product is the identity:
/// `m_ii = 1`, `m_ij = -2 C_{j-i-1}` above the diagonal, and
/// `d_ij = binomial(2(j-i), j-i)` on and above it.
#[derive(Debug, Clone, PartialEq)]
pub struct MdMatrices {
    m: Vec<Vec<BigInt>>,
    d: Vec<Vec<BigInt>>,
}

impl MdMatrices {
    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[Vec<BigInt>] {
        &self.m
    }

    pub fn d(&self) -> &[Vec<BigInt>] {
        &self.d
    }

    /// `M · D`, for inspection; [`md_matrices`] has already asserted it is
    /// the identity.
    #[allow(clippy::needless_range_loop)]
    pub fn product(&self) -> Vec<Vec<BigInt>> {
        let k = self.size();
        let mut out = vec![vec![BigInt::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = BigInt::zero();
                for t in 0..k {
                    acc += &self.m[i][t] * &self.d[t][j];
                }
                out[i][j] = acc;
            }
        }
        out
    }
}

/// Build the `(n-1) x (n-1)` matrix pair and assert `M · D = I`.
#[allow(clippy::needless_range_loop)]
pub fn md_matrices(n: usize) -> MdMatrices {
    assert!(n >= 2, "md_matrices needs n >= 2");
    let k = n - 1;
    let mut m = vec![vec![BigInt::zero(); k]; k];
    let mut d = vec![vec![BigInt::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                m[i][j] = BigInt::one();
                d[i][j] = BigInt::one();
            } else if i < j {
                m[i][j] = -2 * BigInt::from(catalan(j - i - 1));
                d[i][j] = BigInt::from(binomial(2 * (j - i) as u64, (j - i) as i64));
            }
        }
    }
    let md = MdMatrices { m, d };
    let prod = md.product();
    for i in 0..k {
        for j in 0..k {
            let expect = if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            assert_eq!(prod[i][j], expect, "M*D != I at ({i},{j}) for n={n}");
        }
    }
    md
}

fn suffix_expectation_exact(n: usize, l: usize, f: &WeightSpec) -> Result<Rat, FormulaError> {
    let cats = catalan_table(n - 1);
    let beta = |j: usize| -> Result<Rat, FormulaError> {
        let mut acc = rat_int(0);
        for s in j + 1..n {
            let fv = f.eval_exact(n, TriangleRef { l: j, j: s, r: n })?;
            acc += fv * nat_to_rat(&(&cats[s - j - 1] * &cats[n - s - 1]));
        }
        Ok(acc)
    };
    let mut sum = rat_int(0);
    for j in l..n - 1 {
        sum += beta(j)? * nat_to_rat(&binomial(2 * (j - l) as u64, (j - l) as i64));
    }
    Ok(sum / nat_to_rat(&cats[n - l - 1]))
}

fn suffix_expectation_real(
    n: usize,
    l: usize,
    f: &WeightSpec,
    geom: Option<&PolygonSpec>,
) -> Result<f64, FormulaError> {
    let cats = catalan_table(n - 1);
    let cf: Vec<f64> = cats.iter().map(|c| c.to_f64().unwrap()).collect();
    let mut sum = 0.0;
    for j in l..n - 1 {
        let mut beta = 0.0;
        for s in j + 1..n {
            let fv = f.eval(n, TriangleRef { l: j, j: s, r: n }, geom)?.to_f64();
            beta += fv * cf[s - j - 1] * cf[n - s - 1];
        }
        sum += beta
            * binomial(2 * (j - l) as u64, (j - l) as i64)
                .to_f64()
                .unwrap();
    }
    Ok(sum / cf[n - l - 1])
}

/// `E(S_{n,l,n})` for a shift-invariant weight, by the β sums
/// `β_j = Σ_s f(j,s,n) C_{s-j-1} C_{n-s-1}` folded against the central
/// binomial column. `l = 1` gives the full mean.
pub fn convolution_expectation(
    n: usize,
    l: usize,
    f: &WeightSpec,
    geom: Option<&PolygonSpec>,
) -> Result<WeightValue, FormulaError> {
    if l < 1 || l > n - 1 {
        return Err(FormulaError::SuffixOutOfRange { l, max: n - 1, n });
    }
    if !classify(f, n, geom)?.shift_invariant {
        return Err(FormulaError::NotShiftInvariant {
            weight: f.name(),
            n,
        });
    }
    if f.codomain() == Codomain::Real {
        Ok(WeightValue::Real(suffix_expectation_real(n, l, f, geom)?))
    } else {
        Ok(WeightValue::Exact(suffix_expectation_exact(n, l, f)?))
    }
}

/// `Var(S_n)` for a shift-invariant weight via the λ sums
/// `λ_s = Σ_j C_{j-s-1} C_{n-j-1} (f² + 2f(E_left + E_right) + 2 E_left E_right)`
/// where `E_left = E(S_{n,s+n-j,n})` and `E_right = E(S_{n,j,n})`.
pub fn convolution_variance(
    n: usize,
    f: &WeightSpec,
    geom: Option<&PolygonSpec>,
) -> Result<WeightValue, FormulaError> {
    if !classify(f, n, geom)?.shift_invariant {
        return Err(FormulaError::NotShiftInvariant {
            weight: f.name(),
            n,
        });
    }
    let cats = catalan_table(n - 1);
    if f.codomain() == Codomain::Real {
        let e: Vec<f64> = std::iter::once(Ok(0.0))
            .chain((1..n).map(|l| suffix_expectation_real(n, l, f, geom)))
            .collect::<Result<_, _>>()?; // e[l] = E(S_{n,l,n}), e[0] unused
        let cf: Vec<f64> = cats.iter().map(|c| c.to_f64().unwrap()).collect();
        let mut total = 0.0;
        for s in 1..n - 1 {
            let mut lambda = 0.0;
            for j in s + 1..n {
                let fv = f.eval(n, TriangleRef { l: s, j, r: n }, geom)?.to_f64();
                let (el, er) = (e[s + n - j], e[j]);
                lambda += cf[j - s - 1]
                    * cf[n - j - 1]
                    * (fv * fv + 2.0 * fv * (el + er) + 2.0 * el * er);
            }
            total += lambda * binomial(2 * s as u64 - 2, s as i64 - 1).to_f64().unwrap();
        }
        let mean = e[1];
        Ok(WeightValue::Real(total / cf[n - 2] - mean * mean))
    } else {
        let e: Vec<Rat> = std::iter::once(Ok(rat_int(0)))
            .chain((1..n).map(|l| suffix_expectation_exact(n, l, f)))
            .collect::<Result<_, _>>()?;
        let mut total = rat_int(0);
        for s in 1..n - 1 {
            let mut lambda = rat_int(0);
            for j in s + 1..n {
                let fv = f.eval_exact(n, TriangleRef { l: s, j, r: n })?;
                let (el, er) = (&e[s + n - j], &e[j]);
                let inner = &fv * &fv + rat_int(2) * &fv * (el + er) + rat_int(2) * el * er;
                lambda += nat_to_rat(&(&cats[j - s - 1] * &cats[n - j - 1])) * inner;
            }
            total += lambda * nat_to_rat(&binomial(2 * s as u64 - 2, s as i64 - 1));
        }
        let mean = e[1].clone();
        Ok(WeightValue::Exact(
            total / nat_to_rat(&cats[n - 2]) - mean.clone() * mean,
        ))
    }
}

/// A formula result: a scalar or a coefficient vector over exponents of `z`.
#[derive(Debug, Clone, PartialEq)]
pub enum FormulaValue {
    Scalar(Rat),
    Coefficients(Vec<(i64, Rat)>),
}

impl FormulaValue {
    pub fn scalar(&self) -> Option<&Rat> {
        match self {
            FormulaValue::Scalar(r) => Some(r),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> Option<&[(i64, Rat)]> {
        match self {
            FormulaValue::Coefficients(c) => Some(c),
            _ => None,
        }
    }
}

fn require_w(id: &str, w: Option<&Rat>) -> Result<Rat, FormulaError> {
    w.cloned()
        .ok_or_else(|| FormulaError::MissingParameter { id: id.to_string() })
}

fn check_range(id: &'static str, n: usize, min: usize) -> Result<(), FormulaError> {
    if n < min {
        Err(FormulaError::OutOfRange { id, n, min })
    } else {
        Ok(())
    }
}

fn nat_i(n: &Nat) -> BigInt {
    BigInt::from(n.clone())
}

/// Sorted nonzero `(exponent, coefficient)` pairs from an accumulation map.
fn collect_coeffs(map: std::collections::BTreeMap<i64, Rat>) -> Vec<(i64, Rat)> {
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Evaluate a library formula by id.
///
/// Scalar ids: `oneside_mean` (n≥4), `oneside_var` (n≥5),
/// `oneside_general_mean` (w, n≥4), `ears_mean` (n≥4), `ears_var` (n≥6),
/// `degree_mean`/`degree_var` (n≥2), `bluesum_mean` (n≥3), `blue1_mean`
/// (n≥4), `blue1_var` (n≥4), `curious_mean` (w, n≥4).
///
/// Coefficient ids: `oneside_gf` and `ears_gf` expand to the probability
/// vector (their series carry the `1/C_{n-2}` factor, with all negative
/// Laurent powers cancelling); `degree_gf` and `blue1_gf` give the integer
/// count-by-value vectors `s(2n-s-5)!/((n-s-2)!(n-2)!)` and Narayana
/// `N_{n-2,j}`.
pub fn formula_library(id: &str, n: usize, w: Option<&Rat>) -> Result<FormulaValue, FormulaError> {
    let ni = n as i64;
    let scalar = |r: Rat| Ok(FormulaValue::Scalar(r));
    match id {
        "oneside_mean" => {
            check_range("oneside_mean", n, 4)?;
            scalar(rat(ni * (ni - 4), 2 * ni - 5))
        }
        "oneside_var" => {
            check_range("oneside_var", n, 5)?;
            scalar(rat(
                2 * ni * (ni - 1) * (ni - 4) * (ni - 5),
                (2 * ni - 5) * (2 * ni - 5) * (2 * ni - 7),
            ))
        }
        "oneside_gf" => {
            check_range("oneside_gf", n, 4)?;
            let mut acc = std::collections::BTreeMap::new();
            for j in 0..=n - 2 {
                let coef: BigInt = 2 * nat_i(&binomial(j as u64 + 2, (n - 2 - j) as i64))
                    - nat_i(&binomial(j as u64 + 1, (n - 2 - j) as i64));
                let coef = BigInt::from(catalan(j)) * coef;
                if coef.is_zero() {
                    continue;
                }
                let base = 2 * j as i64 + 4 - ni;
                // (1 - z^2)^{n-2-j}
                for i in 0..=n - 2 - j {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let term = &coef * sign * nat_i(&binomial((n - 2 - j) as u64, i as i64));
                    let e = base + 2 * i as i64;
                    *acc.entry(e).or_insert_with(|| rat_int(0)) += Rat::from_integer(term);
                }
            }
            let total = nat_to_rat(&catalan(n - 2));
            let coeffs = collect_coeffs(acc)
                .into_iter()
                .map(|(e, c)| (e, c / total.clone()))
                .collect();
            Ok(FormulaValue::Coefficients(coeffs))
        }
        "oneside_general_mean" => {
            check_range("oneside_general_mean", n, 4)?;
            let w = require_w(id, w)?;
            let c = nat_to_rat(&catalan(n - 2));
            let t1 = rat(-(ni - 1), 2 * (2 * ni - 5))
                * (rat_int(2) * w.clone().pow(ni as i32 - 2) + rat_int(3) * w.clone());
            let mut s1 = rat_int(0);
            let mut s2 = rat_int(0);
            for j in 0..=n - 3 {
                let wj = w.clone().pow(j as i32) * nat_to_rat(&catalan(j));
                s1 += wj.clone()
                    * nat_to_rat(&binomial((2 * n - 6 - 2 * j) as u64, (n - 3 - j) as i64));
                s2 += wj * nat_to_rat(&binomial((2 * n - 4 - 2 * j) as u64, (n - 2 - j) as i64));
            }
            scalar(t1 + rat_int(3) * w.clone() / c.clone() * s1 - w / (rat_int(2) * c) * s2)
        }
        "ears_mean" => {
            check_range("ears_mean", n, 4)?;
            scalar(rat(ni * (ni - 1), 2 * (2 * ni - 5)))
        }
        "ears_var" => {
            check_range("ears_var", n, 6)?;
            scalar(rat(
                ni * (ni - 1) * (ni - 4) * (ni - 5),
                2 * (2 * ni - 5) * (2 * ni - 5) * (2 * ni - 7),
            ))
        }
        "ears_gf" => {
            check_range("ears_gf", n, 4)?;
            let mut acc = std::collections::BTreeMap::new();
            acc.insert(0i64, nat_to_rat(&catalan(n - 2)));
            for j in 0..=n - 3 {
                let coef: BigInt = nat_i(&binomial(j as u64 + 1, (n - 2 - j) as i64))
                    + 2 * nat_i(&binomial(j as u64 + 1, (n - 3 - j) as i64));
                let coef = BigInt::from(catalan(j)) * coef;
                if coef.is_zero() {
                    continue;
                }
                // (z - 1)^{n-2-j}
                let k = n - 2 - j;
                for i in 0..=k {
                    let sign = if (k - i).is_multiple_of(2) { 1 } else { -1 };
                    let term = &coef * sign * nat_i(&binomial(k as u64, i as i64));
                    *acc.entry(i as i64).or_insert_with(|| rat_int(0)) += Rat::from_integer(term);
                }
            }
            let total = nat_to_rat(&catalan(n - 2));
            let coeffs = collect_coeffs(acc)
                .into_iter()
                .map(|(e, c)| (e, c / total.clone()))
                .collect();
            Ok(FormulaValue::Coefficients(coeffs))
        }
        "degree_gf" => {
            check_range("degree_gf", n, 4)?;
            let coeffs = (1..=n - 2)
                .map(|s| {
                    let num = Nat::from(s as u64) * factorial((2 * n - s - 5) as u64);
                    let den = factorial((n - s - 2) as u64) * factorial((n - 2) as u64);
                    (s as i64, nat_to_rat(&num) / nat_to_rat(&den))
                })
                .filter(|(_, c): &(i64, Rat)| !c.is_zero())
                .collect();
            Ok(FormulaValue::Coefficients(coeffs))
        }
        "degree_mean" => {
            check_range("degree_mean", n, 2)?;
            scalar(rat(3 * (ni - 2), ni))
        }
        "degree_var" => {
            check_range("degree_var", n, 2)?;
            scalar(rat(
                2 * (2 * ni - 3) * (ni - 2) * (ni - 3),
                ni * ni * (ni + 1),
            ))
        }
        "bluesum_mean" => {
            check_range("bluesum_mean", n, 3)?;
            let num = Rat::from_integer(
                BigInt::from(2).pow(2 * n as u32 - 5) - nat_i(&binomial(2 * n as u64 - 5, ni - 2)),
            );
            scalar(num / nat_to_rat(&catalan(n - 2)))
        }
        "blue1_gf" => {
            check_range("blue1_gf", n, 4)?;
            let coeffs = (1..=n - 2)
                .map(|j| {
                    (
                        j as i64,
                        nat_to_rat(&crate::exact::narayana(n as u64 - 2, j as i64)),
                    )
                })
                .filter(|(_, c): &(i64, Rat)| !c.is_zero())
                .collect();
            Ok(FormulaValue::Coefficients(coeffs))
        }
        "blue1_mean" => {
            check_range("blue1_mean", n, 4)?;
            scalar(rat(ni - 1, 2))
        }
        "blue1_var" => {
            check_range("blue1_var", n, 4)?;
            scalar(rat((ni - 1) * (ni - 3), 4 * (2 * ni - 5)))
        }
        "curious_mean" => {
            check_range("curious_mean", n, 4)?;
            let w = require_w(id, w)?;
            let mut s = rat_int(0);
            for j in 0..=n - 3 {
                s += w.clone().pow(j as i32)
                    * nat_to_rat(&catalan(j))
                    * nat_to_rat(&binomial((2 * n - 4 - 2 * j) as u64, (n - 2 - j) as i64));
            }
            let c = nat_to_rat(&catalan(n - 2));
            scalar(
                w.clone().pow(ni as i32 - 1) / rat_int(3) - rat(ni - 1, 3) * w.clone()
                    + rat(2, 3) * w / c * s,
            )
        }
        _ => Err(FormulaError::UnknownId(id.to_string())),
    }
}

/// `(mean id, variance id)` of the library formulas that apply to a family,
/// if any, plus its `w` parameter.
pub fn formula_ids_for(
    f: &WeightSpec,
) -> (Option<&'static str>, Option<&'static str>, Option<Rat>) {
    match f.kind() {
        WeightKind::OneSide => (Some("oneside_mean"), Some("oneside_var"), None),
        WeightKind::Ears => (Some("ears_mean"), Some("ears_var"), None),
        WeightKind::DegreeVertex1 => (Some("degree_mean"), Some("degree_var"), None),
        WeightKind::BlueSum => (Some("bluesum_mean"), None, None),
        WeightKind::BlueCount(1) => (Some("blue1_mean"), Some("blue1_var"), None),
        WeightKind::OneSideWeighted(w) => (Some("oneside_general_mean"), None, Some(w.clone())),
        WeightKind::Curious(w) => (Some("curious_mean"), None, Some(w.clone())),
        _ => (None, None, None),
    }
}

/// Closed-form mean and variance for `f`: library formulas inside their
/// stated ranges, with the shift-invariant moment machinery filling every
/// gap. Errors when neither route applies.
pub fn closed_moments(
    n: usize,
    f: &WeightSpec,
    geom: Option<&PolygonSpec>,
) -> Result<(WeightValue, WeightValue), FormulaError> {
    let (mean_id, var_id, w) = formula_ids_for(f);
    let try_formula = |id: Option<&'static str>| -> Option<Rat> {
        id.and_then(|id| formula_library(id, n, w.as_ref()).ok())
            .and_then(|v| v.scalar().cloned())
    };
    let shift_ok = classify(f, n, geom)?.shift_invariant;

    let mean = match try_formula(mean_id) {
        Some(v) => WeightValue::Exact(v),
        None if shift_ok => convolution_expectation(n, 1, f, geom)?,
        None => return Err(FormulaError::NoClosedForm { weight: f.name() }),
    };
    let variance = match try_formula(var_id) {
        Some(v) => WeightValue::Exact(v),
        None if shift_ok => convolution_variance(n, f, geom)?,
        None => return Err(FormulaError::NoClosedForm { weight: f.name() }),
    };
    Ok((mean, variance))
}

/// A vertex-1 angle portfolio: `k_i` counts the fan triangles spanning arc
/// `i`, so `Σ i k_i = n - 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioQuery {
    n: usize,
    k: Vec<u64>,
}

impl PortfolioQuery {
    /// `k` may be shorter than `n-2`; missing tail counts are zero.
    pub fn new(n: usize, mut k: Vec<u64>) -> Result<Self, FormulaError> {
        if n < 3 {
            return Err(FormulaError::PortfolioConstraint {
                detail: format!("n={n} too small"),
            });
        }
        if k.len() > n - 2 {
            if k[n - 2..].iter().any(|&x| x != 0) {
                return Err(FormulaError::PortfolioConstraint {
                    detail: format!("k has a nonzero entry beyond index n-2={}", n - 2),
                });
            }
            k.truncate(n - 2);
        }
        k.resize(n - 2, 0);
        let weighted: u64 = k
            .iter()
            .enumerate()
            .map(|(i, &ki)| (i as u64 + 1) * ki)
            .sum();
        if weighted != n as u64 - 2 {
            return Err(FormulaError::PortfolioConstraint {
                detail: format!("sum of i*k_i is {weighted}, must be n-2={}", n - 2),
            });
        }
        Ok(PortfolioQuery { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> &[u64] {
        &self.k
    }

    pub fn total_count(&self) -> u64 {
        self.k.iter().sum()
    }
}

/// `Z_{n,K}`: the number of triangulations with exactly `K` triangles at
/// vertex 1, summed over all arc multisets — evaluated by iterating every
/// vector `p` with `Σ p_j = K` and `Σ j p_j = n - 2`.
pub fn z_partition(n: usize, k: usize) -> Result<Nat, FormulaError> {
    if k < 1 || k > n - 2 {
        return Err(FormulaError::KOutOfRange { k, max: n - 2 });
    }
    let kfact = factorial(k as u64);
    let mut total = Nat::zero();
    // choose p_j for j = 1.. with remaining count and weight budgets
    fn rec(
        j: usize,
        rem_count: usize,
        rem_weight: usize,
        denom: Nat,
        cat_prod: Nat,
        kfact: &Nat,
        total: &mut Nat,
    ) {
        if rem_count == 0 {
            if rem_weight == 0 {
                *total += kfact / denom * cat_prod;
            }
            return;
        }
        if rem_weight < rem_count {
            return; // every remaining part weighs at least 1... but j grows
        }
        if j > rem_weight {
            return;
        }
        let mut pj = 0usize;
        loop {
            let used = j * pj;
            if used > rem_weight || pj > rem_count {
                break;
            }
            rec(
                j + 1,
                rem_count - pj,
                rem_weight - used,
                &denom * factorial(pj as u64),
                &cat_prod * catalan(j - 1).pow(pj as u32),
                kfact,
                total,
            );
            pj += 1;
        }
    }
    rec(1, k, n - 2, Nat::one(), Nat::one(), &kfact, &mut total);
    Ok(total)
}

/// Probability of an exact vertex-1 angle portfolio:
/// `K (2n-K-5)! / (Z_{n,K} C_{n-2} (n-K-2)! (n-2)!)` times the multinomial
/// coefficient of `k` and the Catalan powers `Π C_{i-1}^{k_i}`.
pub fn portfolio_probability(q: &PortfolioQuery) -> Result<Rat, FormulaError> {
    let n = q.n;
    let big_k = q.total_count() as usize;
    let z = z_partition(n, big_k)?;
    let mut multinomial = factorial(big_k as u64);
    let mut cat_prod = Nat::one();
    for (i, &ki) in q.k.iter().enumerate() {
        multinomial /= factorial(ki);
        cat_prod *= catalan(i).pow(ki as u32);
    }
    let numerator =
        Nat::from(big_k as u64) * factorial((2 * n - big_k - 5) as u64) * multinomial * cat_prod;
    let denominator =
        z * catalan(n - 2) * factorial((n - big_k - 2) as u64) * factorial(n as u64 - 2);
    Ok(nat_to_rat(&numerator) / nat_to_rat(&denominator))
}
