//! Closed-form section counts, virtual dimensions, and the numeric
//! inequalities on `g(a)` used to bound `v(D + D')`.
//!
//! Everything here is a pure function of its arguments. Dimensions are
//! vector-space dimensions unless the name says otherwise
//! ([`v_projective`] is the projective count, one less).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for every floating-point comparison built on `g`.
pub const G_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimsError {
    #[error("surface degree must be at least 1, got {0}")]
    NonPositiveDegree(i64),
    #[error("multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("tangency order {n} exceeds multiplicity {m}")]
    TangencyTooLarge { m: u32, n: u32 },
    #[error("cannot parse multiplicity list `{0}`")]
    Parse(String),
    #[error("b-vector entries must be finite and nonnegative")]
    NegativeB,
    #[error("constraint sampling failed after {0} attempts")]
    SamplingFailed(usize),
}

/// `C(n, 3)` for `n >= 3` and zero below.
pub fn c3(n: i64) -> i64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// `C(n, 2)` for `n >= 2` and zero below.
pub fn c2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// `h^0(O_S(e))` for a surface of degree `d` in `P^3`.
pub fn h0_surface(d: u32, e: i64) -> Result<i64, DimsError> {
    if d == 0 {
        return Err(DimsError::NonPositiveDegree(0));
    }
    Ok(h0_surface_unchecked(d, e))
}

pub(crate) fn h0_surface_unchecked(d: u32, e: i64) -> i64 {
    if e < 0 {
        return 0;
    }
    c3(e + 3) - c3(e - d as i64 + 3)
}

/// Number of sections of `O_P2(e)`; the `d = 1` case of [`h0_surface`].
pub fn h0_plane(e: i64) -> i64 {
    h0_surface_unchecked(1, e)
}

/// A complete-intersection curve `C = S ∩ T` of surfaces of degrees `s`, `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CICurve {
    pub s: u32,
    pub t: u32,
}

impl CICurve {
    pub fn new(s: u32, t: u32) -> Result<Self, DimsError> {
        if s == 0 || t == 0 {
            return Err(DimsError::NonPositiveDegree(0));
        }
        Ok(Self { s, t })
    }

    pub fn degree(&self) -> u32 {
        self.s * self.t
    }
}

/// `h^0(O_C(k))` by inclusion–exclusion over the Koszul resolution.
pub fn h0_curve(c: CICurve, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let (s, t) = (c.s as i64, c.t as i64);
    c3(k + 3) - c3(k - s + 3) - c3(k - t + 3) + c3(k - s - t + 3)
}

/// Length of an ordinary fat point of multiplicity `m`.
pub fn fat_degree(m: u32) -> i64 {
    let m = m as i64;
    m * (m + 1) / 2
}

/// Length of a `δ_{m,n}`-point.
pub fn delta_degree(m: u32, n: u32) -> Result<i64, DimsError> {
    if n > m {
        return Err(DimsError::TangencyTooLarge { m, n });
    }
    Ok(fat_degree(m) + n as i64)
}

/// The series `L_e^S(m_1, ..., m_r)` on a general surface of degree `d`.
///
/// Multiplicities are kept sorted in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSeriesSpec {
    pub d: u32,
    pub e: i64,
    pub mults: Vec<u32>,
}

impl SurfaceSeriesSpec {
    pub fn new(d: u32, e: i64, mut mults: Vec<u32>) -> Result<Self, DimsError> {
        if d == 0 {
            return Err(DimsError::NonPositiveDegree(0));
        }
        if mults.contains(&0) {
            return Err(DimsError::ZeroMultiplicity);
        }
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { d, e, mults })
    }

    pub fn degree_of_scheme(&self) -> i64 {
        self.mults.iter().map(|&m| fat_degree(m)).sum()
    }

    pub fn h0(&self) -> i64 {
        h0_surface_unchecked(self.d, self.e)
    }

    pub fn vdim(&self) -> i64 {
        self.h0() - self.degree_of_scheme()
    }

    pub fn edim(&self) -> i64 {
        self.vdim().max(0)
    }

    /// Same series with one more point of multiplicity `m`.
    pub fn with_point(&self, m: u32) -> Self {
        let mut mults = self.mults.clone();
        mults.push(m);
        Self::new(self.d, self.e, mults).expect("valid by construction")
    }
}

impl fmt::Display for SurfaceSeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{}^{}({})", self.e, self.d, format_multiplicities(&self.mults))
    }
}

/// A planar series `L_e^1(m_1, ..., m_r)`; multiplicities sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanarSeriesSpec {
    pub e: i64,
    pub mults: Vec<u32>,
}

impl PlanarSeriesSpec {
    pub fn new(e: i64, mut mults: Vec<u32>) -> Self {
        mults.retain(|&m| m > 0);
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Self { e, mults }
    }

    pub fn vdim(&self) -> i64 {
        h0_plane(self.e) - self.mults.iter().map(|&m| fat_degree(m)).sum::<i64>()
    }

    pub fn edim(&self) -> i64 {
        self.vdim().max(0)
    }

    pub fn as_surface(&self) -> SurfaceSeriesSpec {
        SurfaceSeriesSpec { d: 1, e: self.e, mults: self.mults.clone() }
    }
}

impl fmt::Display for PlanarSeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{}^1({})", self.e, format_multiplicities(&self.mults))
    }
}

/// Parses `4^2,3,2^3` style lists. An empty string is the empty multiset.
pub fn parse_multiplicities(text: &str) -> Result<Vec<u32>, DimsError> {
    let text = text.trim();
    let mut out = Vec::new();
    if text.is_empty() || text == "-" {
        return Ok(out);
    }
    for item in text.split(',') {
        let item = item.trim();
        let bad = || DimsError::Parse(text.to_string());
        let (m, k) = match item.split_once('^') {
            Some((m, k)) => (m.trim().parse::<u32>().map_err(|_| bad())?, k.trim().parse::<usize>().map_err(|_| bad())?),
            None => (item.parse::<u32>().map_err(|_| bad())?, 1),
        };
        if m == 0 {
            return Err(DimsError::ZeroMultiplicity);
        }
        out.extend(std::iter::repeat_n(m, k));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Inverse of [`parse_multiplicities`] on sorted input, in exponential notation.
pub fn format_multiplicities(mults: &[u32]) -> String {
    let mut sorted = mults.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let m = sorted[i];
        let run = sorted[i..].iter().take_while(|&&x| x == m).count();
        if run == 1 {
            parts.push(m.to_string());
        } else {
            parts.push(format!("{m}^{run}"));
        }
        i += run;
    }
    parts.join(",")
}

/// The ℝ-divisor class `aH - Σ b_i E_i` on the blowup of `S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RDivisorClass {
    pub a: u32,
    pub b: Vec<f64>,
}

impl RDivisorClass {
    pub fn new(a: u32, b: Vec<f64>) -> Result<Self, DimsError> {
        if a == 0 {
            return Err(DimsError::NonPositiveDegree(0));
        }
        if b.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(DimsError::NegativeB);
        }
        Ok(Self { a, b })
    }
}

/// Projective-style count `h^0(O_S(a)) - 1 - Σ b_i(b_i+1)/2`.
pub fn v_projective(d: u32, cls: &RDivisorClass) -> Result<f64, DimsError> {
    let h0 = h0_surface(d, cls.a as i64)? as f64;
    Ok(h0 - 1.0 - cls.b.iter().map(|b| b * (b + 1.0) / 2.0).sum::<f64>())
}

/// `f(a) = h^0(O_S(a)) - 1`.
pub fn f_value(d: u32, a: i64) -> i64 {
    h0_surface_unchecked(d, a) - 1
}

/// The nonnegative root `g` of `g(g+1)/2 = f(a)`.
pub fn g_value(d: u32, a: u32) -> f64 {
    if a == 0 {
        return 0.0;
    }
    let f = f_value(d, a as i64) as f64;
    (-1.0 + (1.0 + 8.0 * f).sqrt()) / 2.0
}

/// Warning attached to scans run outside `d >= 5`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome<T> {
    pub d: u32,
    pub bound: u32,
    pub failures: Vec<T>,
    /// Smallest margin among the pairs that passed.
    pub min_margin: f64,
    pub warning: Option<String>,
}

fn degree_warning(d: u32) -> Option<String> {
    (d < 5).then(|| format!("d = {d} is below 5; the inequality is only claimed for d >= 5"))
}

/// Pairs `1 <= a' <= a`, `a + a' <= bound` where `g(a) + g(a') < g(a + a')` fails.
pub fn scan_superadditivity(d: u32, bound: u32) -> ScanOutcome<(u32, u32)> {
    let g: Vec<f64> = (0..=bound).map(|a| g_value(d, a)).collect();
    let mut failures = Vec::new();
    let mut min_margin = f64::INFINITY;
    for a in 1..bound {
        for a2 in 1..=a.min(bound - a) {
            let margin = g[(a + a2) as usize] - g[a as usize] - g[a2 as usize];
            if margin > G_TOLERANCE {
                min_margin = min_margin.min(margin);
            } else {
                failures.push((a, a2));
            }
        }
    }
    ScanOutcome { d, bound, failures, min_margin, warning: degree_warning(d) }
}

/// Values `2 <= k <= bound` where `g(k+1) - g(k) > g(k) - g(k-1)` fails.
pub fn scan_discrete_convexity(d: u32, bound: u32) -> ScanOutcome<u32> {
    let mut failures = Vec::new();
    let mut min_margin = f64::INFINITY;
    for k in 2..=bound {
        let margin = g_value(d, k + 1) - 2.0 * g_value(d, k) + g_value(d, k - 1);
        if margin > G_TOLERANCE {
            min_margin = min_margin.min(margin);
        } else {
            failures.push(k);
        }
    }
    ScanOutcome { d, bound, failures, min_margin, warning: degree_warning(d) }
}

/// Integer multiplicity vectors of the degree-2 classes with `v = 0` that
/// appear in the `(a, a') = (2, 1)` case.
pub const QUADRIC_CLASSES: [&[u32]; 6] =
    [&[3, 2], &[2, 2, 2], &[3, 1, 1, 1], &[2, 2, 1, 1, 1], &[2, 1, 1, 1, 1, 1, 1], &[1, 1, 1, 1, 1, 1, 1, 1, 1]];

/// The degree-1 classes with `v = 0`: `H - 2E_i` and `H - E_i - E_j - E_k`.
pub const LINEAR_CLASSES: [&[u32]; 2] = [&[2], &[1, 1, 1]];

/// One row of [`check_small_pairs`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallPairRow {
    pub a: u32,
    pub a_prime: u32,
    /// Multiplicity of `D` at points `0..r`.
    pub d_class: Vec<u32>,
    pub d_prime_class: Vec<u32>,
    pub v_sum: i64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallPairsReport {
    pub d: u32,
    pub r: usize,
    pub checked: usize,
    pub violations: Vec<SmallPairRow>,
    pub warning: Option<String>,
}

/// All distinct orderings of a multiset.
fn distinct_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next_permutation
    loop {
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// Injective placements of `k` labelled entries into `r` points.
fn injections(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in 0..r {
            if !cur.contains(&p) {
                cur.push(p);
                rec(k, r, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, r, &mut cur, &mut out);
    out
}

fn v_integer(d: u32, a: u32, b: &[u32]) -> i64 {
    f_value(d, a as i64) - b.iter().map(|&m| fat_degree(m)).sum::<i64>()
}

/// Exhaustive check of the small cases `(a, a') = (2, 1)` and `(1, 1)`.
///
/// `D` occupies the first points; `D'` is placed in every injective way into
/// `r` points, so every pattern of shared and disjoint support is covered.
pub fn check_small_pairs(d: u32, r: usize) -> SmallPairsReport {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut run = |a: u32, a2: u32, dc: &[u32], dpc: &[u32]| {
        let mut seen = std::collections::HashSet::new();
        for perm in distinct_permutations(dpc) {
            for place in injections(perm.len(), r) {
                let mut bd = vec![0u32; r];
                bd[..dc.len()].copy_from_slice(dc);
                let mut bdp = vec![0u32; r];
                for (&m, &p) in perm.iter().zip(&place) {
                    bdp[p] = m;
                }
                if !seen.insert(bdp.clone()) {
                    continue;
                }
                let sum: Vec<u32> = bd.iter().zip(&bdp).map(|(x, y)| x + y).collect();
                let v_sum = v_integer(d, a + a2, &sum);
                let ok = if a == 2 {
                    v_sum >= 1
                } else if bd == bdp {
                    v_sum <= 0
                } else {
                    v_sum > 0
                };
                checked += 1;
                if !ok {
                    violations.push(SmallPairRow {
                        a,
                        a_prime: a2,
                        d_class: bd.clone(),
                        d_prime_class: bdp,
                        v_sum,
                        ok,
                    });
                }
            }
        }
    };
    for dc in QUADRIC_CLASSES {
        if dc.len() > r {
            continue;
        }
        for dpc in LINEAR_CLASSES {
            run(2, 1, dc, dpc);
        }
    }
    for dc in LINEAR_CLASSES {
        if dc.len() > r {
            continue;
        }
        for dpc in LINEAR_CLASSES {
            run(1, 1, dc, dpc);
        }
    }
    SmallPairsReport { d, r, checked, violations, warning: degree_warning(d) }
}

/// Result of [`randomized_min_config`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinConfigReport {
    pub d: u32,
    pub a: u32,
    pub a_prime: u32,
    pub r: usize,
    pub samples: usize,
    pub seed: u64,
    pub single_point_value: f64,
    pub min_observed: f64,
    pub argmin_b: Vec<f64>,
    pub argmin_b_prime: Vec<f64>,
    /// Euclidean distance from the arg-min to the nearest single-point pair.
    pub argmin_distance: f64,
    pub ok: bool,
}

/// `b` vector with `Σ b_i(b_i+1)/2 = f`, distributing `f` by the weights.
fn b_from_weights(f: f64, weights: &[f64]) -> Vec<f64> {
    weights.iter().map(|w| (-1.0 + (1.0 + 8.0 * w * f).sqrt()) / 2.0).collect()
}

fn sample_weights(rng: &mut ChaCha8Rng, r: usize) -> Option<Vec<f64>> {
    // Concentration varies per sample so both spread and near-single-point
    // configurations are visited.
    let alpha = 10f64.powf(rng.random_range(-2.0..0.5));
    let gamma = Gamma::new(alpha, 1.0).ok()?;
    let raw: Vec<f64> = (0..r).map(|_| gamma.sample(rng)).collect();
    let total: f64 = raw.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return None;
    }
    Some(raw.into_iter().map(|x| x / total).collect())
}

/// Samples pairs `(D, D')` on `v(D) = v(D') = 0` and records the smallest
/// `v(D + D')`, comparing it with the single-point configuration.
pub fn randomized_min_config(
    d: u32,
    a: u32,
    a_prime: u32,
    r: usize,
    samples: usize,
    seed: u64,
) -> Result<MinConfigReport, DimsError> {
    if d == 0 || a == 0 || a_prime == 0 || r == 0 {
        return Err(DimsError::NonPositiveDegree(0));
    }
    const MAX_RETRIES: usize = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = f_value(d, a as i64) as f64;
    let f2 = f_value(d, a_prime as i64) as f64;
    let f_sum = f_value(d, (a + a_prime) as i64) as f64;
    let (g, g2) = (g_value(d, a), g_value(d, a_prime));
    let single = f_sum - (g + g2) * (g + g2 + 1.0) / 2.0;
    let v_sum = |b: &[f64], b2: &[f64]| f_sum - b.iter().zip(b2).map(|(x, y)| (x + y) * (x + y + 1.0) / 2.0).sum::<f64>();

    let mut best: Option<(f64, Vec<f64>, Vec<f64>)> = None;
    for _ in 0..samples {
        let mut draw = || {
            for _ in 0..MAX_RETRIES {
                if let Some(w) = sample_weights(&mut rng, r) {
                    return Ok(w);
                }
            }
            Err(DimsError::SamplingFailed(MAX_RETRIES))
        };
        let w = draw()?;
        let w2 = draw()?;
        let b = b_from_weights(f, &w);
        let b2 = b_from_weights(f2, &w2);
        let v = v_sum(&b, &b2);
        if best.as_ref().is_none_or(|(bv, _, _)| v < *bv) {
            best = Some((v, b, b2));
        }
    }
    let (min_observed, argmin_b, argmin_b_prime) = best.unwrap_or_else(|| {
        let mut b = vec![0.0; r];
        let mut b2 = vec![0.0; r];
        b[0] = g;
        b2[0] = g2;
        (single, b, b2)
    });
    let argmin_distance = (0..r)
        .map(|i| {
            let mut s = 0.0;
            for j in 0..r {
                let (t, t2) = if i == j { (g, g2) } else { (0.0, 0.0) };
                s += (argmin_b[j] - t).powi(2) + (argmin_b_prime[j] - t2).powi(2);
            }
            s.sqrt()
        })
        .fold(f64::INFINITY, f64::min);
    Ok(MinConfigReport {
        d,
        a,
        a_prime,
        r,
        samples,
        seed,
        single_point_value: single,
        min_observed,
        argmin_b,
        argmin_b_prime,
        argmin_distance,
        ok: min_observed >= single - G_TOLERANCE,
    })
}
