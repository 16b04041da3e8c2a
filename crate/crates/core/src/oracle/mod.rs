//! Series dimensions by exact rank computations over `F_p`.
//!
//! A series `L_e^d(Γ)` is realised on a random surface of degree `d` with
//! random rational points. Each scheme contributes Taylor-coefficient rows
//! over the degree-`e` monomials of `P^3`, and the series dimension is the
//! nullity minus the multiples of the surface form. The dimension found on
//! any instance bounds the generic one from above, so reaching `edim` once
//! proves nonspeciality.

pub mod crosscheck;
pub mod field;
pub mod poly;
pub mod series;
pub mod surface;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dims::{c3, delta_degree, fat_degree, h0_surface_unchecked, SurfaceSeriesSpec};
pub use field::PrimeField;
use series::BiSeries;
pub use surface::{
    frame_for_direction, jet_parametrize, monomials, random_surface, random_tangent, sample_surface_point, Jet, Point,
    SurfaceInstance, IDENTITY_FRAME,
};

pub const DEFAULT_PRIME: u64 = 32003;
pub const SECOND_PRIME: u64 = 31013;
pub const DEFAULT_MAX_COLUMNS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not a prime in [101, 2^31)")]
    InvalidPrime(u64),
    #[error("trials must be positive")]
    NoTrials,
    #[error("surface form is zero or not homogeneous")]
    InvalidSurface,
    #[error("point is zero or not on the surface")]
    InvalidPoint,
    #[error("no rational smooth point found after {0} lines")]
    RetriesExhausted(u32),
    #[error("no chart variable has a nonzero partial derivative")]
    SingularChart,
    #[error("direction is not tangent to the surface")]
    NotTangent,
    #[error("direction is zero in the tangent plane")]
    ZeroDirection,
    #[error("tangency order {n} exceeds multiplicity {m}")]
    TangencyTooLarge { m: u32, n: u32 },
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("schemes share a support point")]
    CoincidentSupport,
    #[error("{columns} columns exceed the budget of {max}")]
    BudgetExceeded { columns: usize, max: usize },
    #[error("point pool holds {have} points of order {order}, request needs {need}")]
    PoolTooSmall { have: usize, order: u32, need: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub p: u64,
    /// A second prime whose instances must agree with the first.
    pub p2: Option<u64>,
    pub seed: u64,
    pub trials: u32,
    pub max_retries: u32,
    pub max_columns: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME, p2: None, seed: 0, trials: 3, max_retries: 64, max_columns: DEFAULT_MAX_COLUMNS }
    }
}

impl OracleConfig {
    fn fields(&self) -> Result<Vec<PrimeField>, OracleError> {
        if self.trials == 0 {
            return Err(OracleError::NoTrials);
        }
        let make = |p: u64| PrimeField::new(p).filter(|_| p >= 101).ok_or(OracleError::InvalidPrime(p));
        let mut out = vec![make(self.p)?];
        if let Some(p2) = self.p2.filter(|&q| q != self.p) {
            out.push(make(p2)?);
        }
        Ok(out)
    }

    /// Independent generator for one trial at one prime.
    fn rng(&self, prime_index: usize, trial: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((prime_index as u64) << 32) | trial as u64);
        rng
    }

    fn check_budget(&self, e: i64) -> Result<usize, OracleError> {
        let columns = c3(e + 3) as usize;
        if columns > self.max_columns {
            return Err(OracleError::BudgetExceeded { columns, max: self.max_columns });
        }
        Ok(columns)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SchemeKind {
    Fat { m: u32 },
    /// `δ_{m,n}` whose distinguished direction is the given tangent vector.
    Delta { m: u32, n: u32, direction: Point },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImposedScheme {
    pub point: Point,
    pub kind: SchemeKind,
}

impl ImposedScheme {
    pub fn fat(point: Point, m: u32) -> Self {
        Self { point, kind: SchemeKind::Fat { m } }
    }

    pub fn degree(&self) -> i64 {
        match self.kind {
            SchemeKind::Fat { m } => fat_degree(m),
            SchemeKind::Delta { m, n, .. } => fat_degree(m) + n as i64,
        }
    }
}

/// Series of every degree-`e` monomial composed with a chart, truncated at the chart's order.
fn monomial_series(f: &PrimeField, coords: &[BiSeries; 4], e: u32) -> Vec<BiSeries> {
    let powers: Vec<Vec<BiSeries>> = coords.iter().map(|c| c.powers(f, e)).collect();
    monomials(e)
        .into_iter()
        .map(|a| {
            let mut acc: Option<BiSeries> = None;
            for (i, pw) in powers.iter().enumerate() {
                if a[i] > 0 {
                    let factor = &pw[a[i] as usize];
                    acc = Some(match acc {
                        None => factor.clone(),
                        Some(x) => x.mul(f, factor),
                    });
                }
            }
            acc.unwrap_or_else(|| BiSeries::constant(coords[0].order, 1))
        })
        .collect()
}

/// Rows of Taylor coefficients `s^i t^j` over the columns, for the given `(i, j)` list.
fn coefficient_rows(columns: &[BiSeries], indices: &[(u32, u32)]) -> Vec<Vec<u64>> {
    indices.iter().map(|&(i, j)| columns.iter().map(|c| c.coeff(i, j)).collect()).collect()
}

fn lower_indices(m: u32) -> Vec<(u32, u32)> {
    (0..m).flat_map(|k| (0..=k).map(move |j| (k - j, j))).collect()
}

/// Condition rows of one scheme on degree-`e` forms.
pub fn condition_rows(s: &SurfaceInstance, e: u32, scheme: &ImposedScheme) -> Result<Vec<Vec<u64>>, OracleError> {
    let f = &s.field;
    let (m, extra, frame) = match &scheme.kind {
        SchemeKind::Fat { m } => (*m, 0, IDENTITY_FRAME),
        SchemeKind::Delta { m, n, direction } => {
            if n > m {
                return Err(OracleError::TangencyTooLarge { m: *m, n: *n });
            }
            (*m, *n, frame_for_direction(s, &scheme.point, direction)?)
        }
    };
    if m == 0 {
        return Err(OracleError::ZeroMultiplicity);
    }
    let order = if extra > 0 { m } else { m - 1 };
    let jet = jet_parametrize(s, &scheme.point, order, frame)?;
    let columns = monomial_series(f, &jet.coordinate_series(f), e);
    let mut indices = lower_indices(m);
    indices.extend((0..extra).map(|j| (m - j, j)));
    Ok(coefficient_rows(&columns, &indices))
}

/// Rank by Gaussian elimination; consumes the rows.
pub fn rank(f: &PrimeField, mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]);
        for x in rows[r][c..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x = f.reduce(*x + neg * y);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

fn dim_from_rank(d: u32, e: i64, rank: usize) -> i64 {
    c3(e + 3) - rank as i64 - c3(e - d as i64 + 3)
}

/// Vector-space dimension of the degree-`e` series on `s` through the schemes.
pub fn series_dim(s: &SurfaceInstance, e: i64, schemes: &[ImposedScheme]) -> Result<i64, OracleError> {
    for (i, a) in schemes.iter().enumerate() {
        if schemes[..i].iter().any(|b| b.point == a.point) {
            return Err(OracleError::CoincidentSupport);
        }
    }
    if e < 0 {
        return Ok(0);
    }
    let mut rows = Vec::new();
    for scheme in schemes {
        rows.extend(condition_rows(s, e as u32, scheme)?);
    }
    Ok(dim_from_rank(s.d, e, rank(&s.field, rows)))
}

/// Distinct smooth points on `s`.
pub fn sample_distinct_points<R: Rng>(
    s: &SurfaceInstance,
    count: usize,
    rng: &mut R,
    max_retries: u32,
) -> Result<Vec<Point>, OracleError> {
    let mut points: Vec<Point> = Vec::with_capacity(count);
    let mut misses = 0;
    while points.len() < count {
        let p = sample_surface_point(s, rng, max_retries)?;
        if points.contains(&p) {
            misses += 1;
            if misses > max_retries {
                return Err(OracleError::RetriesExhausted(max_retries));
            }
            continue;
        }
        points.push(p);
    }
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    NonspecialCertified,
    SpecialAtInstances,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialDim {
    pub prime: u64,
    pub trial: u32,
    pub dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub spec: SurfaceSeriesSpec,
    pub edim: i64,
    pub observed_dim: i64,
    pub columns: usize,
    pub rows: i64,
    pub trials: Vec<TrialDim>,
    pub certified: Certification,
}

fn trial_dim(spec: &SurfaceSeriesSpec, f: PrimeField, rng: &mut ChaCha8Rng, max_retries: u32) -> Result<i64, OracleError> {
    let s = random_surface(spec.d, f, rng)?;
    let points = sample_distinct_points(&s, spec.mults.len(), rng, max_retries)?;
    let schemes: Vec<ImposedScheme> =
        points.into_iter().zip(&spec.mults).map(|(p, &m)| ImposedScheme::fat(p, m)).collect();
    series_dim(&s, spec.e, &schemes)
}

/// Minimum dimension over random instances, with its certification.
///
/// With a second prime, certification also requires both primes to report
/// the same minimum.
pub fn oracle_verdict(spec: &SurfaceSeriesSpec, cfg: &OracleConfig) -> Result<OracleVerdict, OracleError> {
    let fields = cfg.fields()?;
    let columns = cfg.check_budget(spec.e)?;
    let jobs: Vec<(usize, u32)> = (0..fields.len()).flat_map(|i| (0..cfg.trials).map(move |t| (i, t))).collect();
    let trials = jobs
        .par_iter()
        .map(|&(i, t)| {
            let dim = trial_dim(spec, fields[i], &mut cfg.rng(i, t), cfg.max_retries)?;
            Ok(TrialDim { prime: fields[i].modulus(), trial: t, dim })
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    let min_for = |p: u64| trials.iter().filter(|x| x.prime == p).map(|x| x.dim).min().unwrap_or(i64::MAX);
    let minima: Vec<i64> = fields.iter().map(|f| min_for(f.modulus())).collect();
    let observed_dim = *minima.iter().min().expect("at least one prime");
    let edim = spec.edim();
    let agree = minima.iter().all(|&m| m == observed_dim);
    let certified = match observed_dim.cmp(&edim) {
        _ if !agree => Certification::Inconclusive,
        std::cmp::Ordering::Equal => Certification::NonspecialCertified,
        std::cmp::Ordering::Greater => Certification::SpecialAtInstances,
        std::cmp::Ordering::Less => Certification::Inconclusive,
    };
    Ok(OracleVerdict { spec: spec.clone(), edim, observed_dim, columns, rows: spec.degree_of_scheme(), trials, certified })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaCount {
    pub d: u32,
    pub e: i64,
    pub m: u32,
    pub n: u32,
    /// Conditions imposed by a general `δ_{m,n}` on the full series.
    pub conditions: i64,
    /// `min(deg δ_{m,n}, h^0)`.
    pub independent: i64,
    /// Conditions imposed by a general point of multiplicity `m + 1`.
    pub fat_next: i64,
    /// Whether a general `m`-fold point imposes `min(C(m+1,2), h^0)` conditions.
    pub hypothesis: bool,
    /// Under the hypothesis: `conditions` is `independent` or `fat_next`.
    pub dichotomy_holds: bool,
}

/// Drop in dimension caused by one general `δ_{m,n}` on `H^0(O_S(e))`,
/// with the check that, when an `m`-fold point imposes the expected number
/// of conditions, it is either independent or that of an `(m+1)`-fold point.
/// `n = 0` means a plain `m`-fold point.
pub fn delta_condition_count(d: u32, e: i64, m: u32, n: u32, cfg: &OracleConfig) -> Result<DeltaCount, OracleError> {
    if n > m {
        return Err(OracleError::TangencyTooLarge { m, n });
    }
    if m == 0 {
        return Err(OracleError::ZeroMultiplicity);
    }
    let fields = cfg.fields()?;
    cfg.check_budget(e)?;
    let h0 = h0_surface_unchecked(d, e);
    let jobs: Vec<(usize, u32)> = (0..fields.len()).flat_map(|i| (0..cfg.trials).map(move |t| (i, t))).collect();
    let drops = jobs
        .par_iter()
        .map(|&(i, t)| {
            let mut rng = cfg.rng(i, t);
            let s = random_surface(d, fields[i], &mut rng)?;
            let p = sample_surface_point(&s, &mut rng, cfg.max_retries)?;
            let delta = if n == 0 {
                ImposedScheme::fat(p, m)
            } else {
                let direction = random_tangent(&s, &p, &mut rng)?;
                ImposedScheme { point: p, kind: SchemeKind::Delta { m, n, direction } }
            };
            let with_delta = series_dim(&s, e, &[delta])?;
            let with_fat = series_dim(&s, e, &[ImposedScheme::fat(p, m + 1)])?;
            let with_base = series_dim(&s, e, &[ImposedScheme::fat(p, m)])?;
            Ok((h0 - with_delta, h0 - with_fat, h0 - with_base))
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    let conditions = drops.iter().map(|x| x.0).max().unwrap_or(0);
    let fat_next = drops.iter().map(|x| x.1).max().unwrap_or(0);
    let fat_base = drops.iter().map(|x| x.2).max().unwrap_or(0);
    let hypothesis = fat_base == fat_degree(m).min(h0);
    let degree = if n == 0 { fat_degree(m) } else { delta_degree(m, n).expect("n <= m") };
    let independent = degree.min(h0);
    Ok(DeltaCount {
        d,
        e,
        m,
        n,
        conditions,
        independent,
        fat_next,
        hypothesis,
        dichotomy_holds: !hypothesis || conditions == independent || conditions == fat_next,
    })
}

/// Points on one surface with charts cached up to a fixed order, for
/// sweeping many fat-point series at once.
#[derive(Debug, Clone)]
pub struct PointPool {
    pub surface: SurfaceInstance,
    pub points: Vec<Point>,
    pub order: u32,
    coords: Vec<[BiSeries; 4]>,
}

impl PointPool {
    pub fn sample<R: Rng>(
        surface: SurfaceInstance,
        count: usize,
        order: u32,
        rng: &mut R,
        max_retries: u32,
    ) -> Result<Self, OracleError> {
        let points = sample_distinct_points(&surface, count, rng, max_retries)?;
        let coords = points
            .iter()
            .map(|p| Ok(jet_parametrize(&surface, p, order, IDENTITY_FRAME)?.coordinate_series(&surface.field)))
            .collect::<Result<Vec<_>, OracleError>>()?;
        Ok(Self { surface, points, order, coords })
    }

    /// Pool on a random surface of degree `d` drawn from the first prime and seed of `cfg`.
    pub fn from_config(d: u32, count: usize, order: u32, cfg: &OracleConfig) -> Result<Self, OracleError> {
        let field = cfg.fields()?[0];
        let mut rng = cfg.rng(0, 0);
        let surface = random_surface(d, field, &mut rng)?;
        Self::sample(surface, count, order, &mut rng, cfg.max_retries)
    }

    /// Condition rows of every pooled point for degree-`e` forms.
    pub fn table(&self, e: i64) -> FatTable {
        let f = &self.surface.field;
        let indices = lower_indices(self.order + 1);
        let rows = if e < 0 {
            Vec::new()
        } else {
            self.coords
                .iter()
                .map(|c| coefficient_rows(&monomial_series(f, c, e as u32), &indices))
                .collect()
        };
        FatTable { field: *f, d: self.surface.d, e, max_multiplicity: self.order + 1, rows }
    }
}

/// Cached condition rows; point `i` of the pool carries the `i`-th multiplicity.
#[derive(Debug, Clone)]
pub struct FatTable {
    field: PrimeField,
    d: u32,
    pub e: i64,
    pub max_multiplicity: u32,
    rows: Vec<Vec<Vec<u64>>>,
}

impl FatTable {
    pub fn series_dim(&self, mults: &[u32]) -> Result<i64, OracleError> {
        if self.e < 0 {
            return Ok(0);
        }
        if mults.len() > self.rows.len() || mults.iter().any(|&m| m > self.max_multiplicity) {
            return Err(OracleError::PoolTooSmall {
                have: self.rows.len(),
                order: self.max_multiplicity - 1,
                need: mults.len(),
            });
        }
        let mut rows = Vec::new();
        for (point_rows, &m) in self.rows.iter().zip(mults) {
            if m == 0 {
                return Err(OracleError::ZeroMultiplicity);
            }
            rows.extend(point_rows[..fat_degree(m) as usize].iter().cloned());
        }
        Ok(dim_from_rank(self.d, self.e, rank(&self.field, rows)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::parse_multiplicities;

    fn spec(d: u32, e: i64, m: &str) -> SurfaceSeriesSpec {
        SurfaceSeriesSpec::new(d, e, parse_multiplicities(m).unwrap()).unwrap()
    }

    fn cfg(seed: u64) -> OracleConfig {
        OracleConfig { seed, ..OracleConfig::default() }
    }

    #[test]
    fn row_counts() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_surface(4, f, &mut rng).unwrap();
        let p = sample_surface_point(&s, &mut rng, 50).unwrap();
        assert_eq!(condition_rows(&s, 3, &ImposedScheme::fat(p, 1)).unwrap().len(), 1);
        assert_eq!(condition_rows(&s, 3, &ImposedScheme::fat(p, 4)).unwrap().len(), 10);
        let v = random_tangent(&s, &p, &mut rng).unwrap();
        let delta = ImposedScheme { point: p, kind: SchemeKind::Delta { m: 9, n: 7, direction: v } };
        assert_eq!(condition_rows(&s, 5, &delta).unwrap().len(), 52);
        let bad = ImposedScheme { point: p, kind: SchemeKind::Delta { m: 2, n: 3, direction: v } };
        assert_eq!(condition_rows(&s, 5, &bad), Err(OracleError::TangencyTooLarge { m: 2, n: 3 }));
    }

    #[test]
    fn evaluation_row_is_the_point() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_surface(3, f, &mut rng).unwrap();
        let p = sample_surface_point(&s, &mut rng, 50).unwrap();
        let row = &condition_rows(&s, 2, &ImposedScheme::fat(p, 1)).unwrap()[0];
        let expected: Vec<u64> = monomials(2)
            .iter()
            .map(|a| (0..4).fold(1, |acc, i| f.mul(acc, f.pow(p[i], a[i] as u64))))
            .collect();
        assert_eq!(row, &expected);
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(rank(&f, vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        assert_eq!(rank(&f, vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&f, Vec::new()), 0);
    }

    #[test]
    fn tangent_plane_series_on_a_quartic() {
        let v = oracle_verdict(&spec(4, 2, "4"), &cfg(1)).unwrap();
        assert_eq!(v.observed_dim, 1);
        assert_eq!(v.certified, Certification::SpecialAtInstances);
    }

    #[test]
    fn two_quadruple_points_on_a_quartic() {
        let v = oracle_verdict(&spec(4, 3, "4^2"), &cfg(2)).unwrap();
        assert_eq!(v.observed_dim, 0);
        assert_eq!(v.certified, Certification::NonspecialCertified);
    }

    #[test]
    fn planar_series() {
        let v = oracle_verdict(&spec(1, 4, "2^3"), &cfg(3)).unwrap();
        assert_eq!(v.observed_dim, 6);
        assert_eq!(v.certified, Certification::NonspecialCertified);
    }

    #[test]
    fn plane_conics_with_a_delta_point() {
        let c = delta_condition_count(1, 2, 2, 1, &cfg(4)).unwrap();
        assert_eq!(c.conditions, 4);
        assert!(c.hypothesis && c.dichotomy_holds);
    }

    #[test]
    fn tangent_plane_square_breaks_the_hypothesis() {
        // T_p^2 on a quadric has a quadruple point at p
        let c = delta_condition_count(2, 2, 4, 1, &cfg(5)).unwrap();
        assert!(!c.hypothesis);
        assert_eq!(c.fat_next, 9);
    }

    #[test]
    fn budget_is_enforced() {
        let small = OracleConfig { max_columns: 10, ..cfg(0) };
        assert_eq!(
            oracle_verdict(&spec(4, 5, "2"), &small).unwrap_err(),
            OracleError::BudgetExceeded { columns: 56, max: 10 }
        );
        assert_eq!(OracleConfig { p: 97, ..cfg(0) }.fields().unwrap_err(), OracleError::InvalidPrime(97));
    }

    #[test]
    fn kernel_floor_and_monotonicity() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = random_surface(2, f, &mut rng).unwrap();
        let pts = sample_distinct_points(&s, 4, &mut rng, 50).unwrap();
        assert_eq!(series_dim(&s, 3, &[]).unwrap(), h0_surface_unchecked(2, 3));
        let mut last = series_dim(&s, 4, &[]).unwrap();
        let mut schemes = Vec::new();
        for (p, m) in pts.into_iter().zip([3, 2, 2, 1]) {
            schemes.push(ImposedScheme::fat(p, m));
            let now = series_dim(&s, 4, &schemes).unwrap();
            assert!(now <= last && last - now <= fat_degree(m));
            last = now;
        }
        assert_eq!(series_dim(&s, 4, &[schemes[0].clone(), schemes[0].clone()]), Err(OracleError::CoincidentSupport));
    }

    #[test]
    fn pool_matches_direct_computation() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let s = random_surface(3, f, &mut rng).unwrap();
        let pool = PointPool::sample(s.clone(), 5, 3, &mut rng, 50).unwrap();
        let table = pool.table(4);
        let mults = [4, 3, 2, 2, 1];
        let schemes: Vec<_> = pool.points.iter().zip(mults).map(|(&p, m)| ImposedScheme::fat(p, m)).collect();
        assert_eq!(table.series_dim(&mults).unwrap(), series_dim(&s, 4, &schemes).unwrap());
        assert!(table.series_dim(&[5]).is_err());
    }
}
