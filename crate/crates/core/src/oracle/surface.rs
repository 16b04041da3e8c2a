//! Random surfaces, rational points on them, and local charts at those points.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::poly;
use super::series::BiSeries;
use super::OracleError;

/// Exponent vectors of the degree-`e` monomials in four variables,
/// in descending lexicographic order.
pub fn monomials(e: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in (0..=e).rev() {
        for b in (0..=e - a).rev() {
            for c in (0..=e - a - b).rev() {
                out.push([a, b, c, e - a - b - c]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceTerm {
    pub exponents: [u32; 4],
    pub coefficient: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInstance {
    pub d: u32,
    pub field: PrimeField,
    pub terms: Vec<SurfaceTerm>,
}

pub type Point = [u64; 4];

impl SurfaceInstance {
    /// Builds an instance from explicit terms; zero coefficients are dropped.
    pub fn from_terms(field: PrimeField, terms: &[([u32; 4], i64)]) -> Result<Self, OracleError> {
        let d = terms.first().map(|t| t.0.iter().sum::<u32>()).unwrap_or(0);
        let terms: Vec<SurfaceTerm> = terms
            .iter()
            .filter(|(_, c)| field.from_i64(*c) != 0)
            .map(|(exponents, c)| SurfaceTerm { exponents: *exponents, coefficient: field.from_i64(*c) })
            .collect();
        if d == 0 || terms.is_empty() || terms.iter().any(|t| t.exponents.iter().sum::<u32>() != d) {
            return Err(OracleError::InvalidSurface);
        }
        Ok(Self { d, field, terms })
    }

    pub fn eval(&self, x: &Point) -> u64 {
        let f = &self.field;
        self.terms.iter().fold(0, |acc, t| {
            let m = (0..4).fold(t.coefficient, |m, i| f.mul(m, f.pow(x[i], t.exponents[i] as u64)));
            f.add(acc, m)
        })
    }

    pub fn gradient(&self, x: &Point) -> Point {
        let f = &self.field;
        let mut g = [0; 4];
        for t in &self.terms {
            for (i, gi) in g.iter_mut().enumerate() {
                let a = t.exponents[i];
                if a == 0 {
                    continue;
                }
                let mut m = f.mul(t.coefficient, a as u64 % f.modulus());
                for (j, &xj) in x.iter().enumerate() {
                    let exp = if j == i { a - 1 } else { t.exponents[j] };
                    m = f.mul(m, f.pow(xj, exp as u64));
                }
                *gi = f.add(*gi, m);
            }
        }
        g
    }

    /// The form restricted to the line `p0 + λ q`, as a polynomial in `λ`.
    fn restrict_to_line(&self, p0: &Point, q: &Point) -> poly::Poly {
        let f = &self.field;
        let powers: Vec<Vec<poly::Poly>> = (0..4)
            .map(|i| {
                let lin = poly::trim(vec![p0[i], q[i]]);
                let mut pw = vec![vec![1]];
                for k in 1..=self.d as usize {
                    let next = poly::mul(f, &pw[k - 1], &lin);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = vec![0; self.d as usize + 1];
        for t in &self.terms {
            let mut m = vec![t.coefficient];
            for (i, pw) in powers.iter().enumerate() {
                m = poly::mul(f, &m, &pw[t.exponents[i] as usize]);
            }
            for (k, c) in m.into_iter().enumerate() {
                acc[k] = f.add(acc[k], c);
            }
        }
        poly::trim(acc)
    }
}

/// Uniformly random coefficients on all degree-`d` monomials; rejects the zero form.
pub fn random_surface<R: Rng>(d: u32, field: PrimeField, rng: &mut R) -> Result<SurfaceInstance, OracleError> {
    if d == 0 {
        return Err(OracleError::InvalidSurface);
    }
    loop {
        let terms: Vec<SurfaceTerm> = monomials(d)
            .into_iter()
            .map(|exponents| SurfaceTerm { exponents, coefficient: rng.random_range(0..field.modulus()) })
            .filter(|t| t.coefficient != 0)
            .collect();
        if !terms.is_empty() {
            return Ok(SurfaceInstance { d, field, terms });
        }
    }
}

/// Scales so that the first nonzero coordinate is 1.
pub fn normalize(f: &PrimeField, x: &Point) -> Option<Point> {
    let k = x.iter().position(|&c| c != 0)?;
    let inv = f.inv(x[k]);
    Some(x.map(|c| f.mul(c, inv)))
}

/// A smooth rational point: random line, rational root of the restriction,
/// nonzero gradient.
pub fn sample_surface_point<R: Rng>(
    s: &SurfaceInstance,
    rng: &mut R,
    max_retries: u32,
) -> Result<Point, OracleError> {
    let f = &s.field;
    let p = f.modulus();
    for _ in 0..max_retries {
        let p0: Point = std::array::from_fn(|_| rng.random_range(0..p));
        let q: Point = std::array::from_fn(|_| rng.random_range(0..p));
        let g = s.restrict_to_line(&p0, &q);
        if g.is_empty() {
            continue;
        }
        let Some(lambda) = poly::random_root(f, &g, rng) else { continue };
        let raw: Point = std::array::from_fn(|i| f.add(p0[i], f.mul(lambda, q[i])));
        let Some(point) = normalize(f, &raw) else { continue };
        if s.gradient(&point).iter().any(|&c| c != 0) {
            return Ok(point);
        }
    }
    Err(OracleError::RetriesExhausted(max_retries))
}

/// Local chart at a smooth point.
///
/// With `x_k = 1` and the point translated to the origin, the affine
/// coordinates are `u_a = α s + γ t`, `u_b = β s + δ t` and `u_z = φ(s, t)`,
/// where `frame = [[α, γ], [β, δ]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jet {
    pub point: Point,
    pub affine: usize,
    pub vars: [usize; 3],
    pub frame: [[u64; 2]; 2],
    pub phi: BiSeries,
}

pub const IDENTITY_FRAME: [[u64; 2]; 2] = [[1, 0], [0, 1]];

/// Affine index and chart variables `[a, b, z]` at a normalized point.
fn chart_variables(s: &SurfaceInstance, point: &Point) -> Result<(usize, [usize; 3]), OracleError> {
    let k = point.iter().position(|&c| c == 1).ok_or(OracleError::SingularChart)?;
    let grad = s.gradient(point);
    let others: Vec<usize> = (0..4).filter(|&j| j != k).collect();
    let z = *others.iter().rev().find(|&&j| grad[j] != 0).ok_or(OracleError::SingularChart)?;
    let ab: Vec<usize> = others.into_iter().filter(|&j| j != z).collect();
    Ok((k, [ab[0], ab[1], z]))
}

/// Solves `f(x, y, φ(x, y)) = 0` degree by degree up to `order`.
pub fn jet_parametrize(
    s: &SurfaceInstance,
    point: &Point,
    order: u32,
    frame: [[u64; 2]; 2],
) -> Result<Jet, OracleError> {
    let f = &s.field;
    let point = normalize(f, point).ok_or(OracleError::InvalidPoint)?;
    if s.eval(&point) != 0 {
        return Err(OracleError::InvalidPoint);
    }
    let (affine, vars) = chart_variables(s, &point)?;
    let fz_inv = f.inv(s.gradient(&point)[vars[2]]);
    let mut jet = Jet { point, affine, vars, frame, phi: BiSeries::zero(order) };
    for k in 1..=order {
        let value = eval_on_chart(s, &jet.coordinate_series(f));
        for j in 0..=k {
            let c = value.coeff(k - j, j);
            jet.phi.set(k - j, j, f.neg(f.mul(c, fz_inv)));
        }
    }
    Ok(jet)
}

/// `f` composed with the chart, as a truncated series.
pub fn eval_on_chart(s: &SurfaceInstance, coords: &[BiSeries; 4]) -> BiSeries {
    let f = &s.field;
    let order = coords[0].order;
    let powers: Vec<Vec<BiSeries>> = coords.iter().map(|c| c.powers(f, s.d)).collect();
    let mut acc = BiSeries::zero(order);
    for t in &s.terms {
        let mut m = BiSeries::constant(order, t.coefficient);
        for (i, pw) in powers.iter().enumerate() {
            if t.exponents[i] > 0 {
                m = m.mul(f, &pw[t.exponents[i] as usize]);
            }
        }
        acc = acc.add(f, &m);
    }
    acc
}

impl Jet {
    /// The four homogeneous coordinates as series in `s, t`.
    pub fn coordinate_series(&self, f: &PrimeField) -> [BiSeries; 4] {
        let order = self.phi.order;
        let [a, b, z] = self.vars;
        let mut out: [BiSeries; 4] = std::array::from_fn(|_| BiSeries::zero(order));
        out[self.affine] = BiSeries::constant(order, 1);
        out[a] = BiSeries::affine(order, self.point[a], self.frame[0][0], self.frame[0][1]);
        out[b] = BiSeries::affine(order, self.point[b], self.frame[1][0], self.frame[1][1]);
        out[z] = self.phi.add(f, &BiSeries::constant(order, self.point[z]));
        out
    }

    /// Direction of the `s`-axis as a homogeneous tangent vector.
    pub fn s_direction(&self) -> Point {
        let mut v = [0; 4];
        v[self.vars[0]] = self.frame[0][0];
        v[self.vars[1]] = self.frame[1][0];
        v[self.vars[2]] = self.phi.coeff(1, 0);
        v
    }
}

/// Frame whose `s`-axis follows the tangent vector `v` at `point`.
pub fn frame_for_direction(s: &SurfaceInstance, point: &Point, v: &Point) -> Result<[[u64; 2]; 2], OracleError> {
    let f = &s.field;
    let point = normalize(f, point).ok_or(OracleError::InvalidPoint)?;
    let grad = s.gradient(&point);
    let dot = (0..4).fold(0, |acc, i| f.add(acc, f.mul(grad[i], v[i])));
    if dot != 0 {
        return Err(OracleError::NotTangent);
    }
    let (k, [a, b, _]) = chart_variables(s, &point)?;
    let w = |j: usize| f.sub(v[j], f.mul(v[k], point[j]));
    let (alpha, beta) = (w(a), w(b));
    if alpha == 0 && beta == 0 {
        return Err(OracleError::ZeroDirection);
    }
    let (gamma, delta) = if alpha != 0 { (0, 1) } else { (1, 0) };
    Ok([[alpha, gamma], [beta, delta]])
}

/// A random nonzero tangent vector at a smooth point.
pub fn random_tangent<R: Rng>(s: &SurfaceInstance, point: &Point, rng: &mut R) -> Result<Point, OracleError> {
    let f = &s.field;
    let point = normalize(f, point).ok_or(OracleError::InvalidPoint)?;
    let (_, [a, b, z]) = chart_variables(s, &point)?;
    let grad = s.gradient(&point);
    loop {
        let alpha = rng.random_range(0..f.modulus());
        let beta = rng.random_range(0..f.modulus());
        if alpha == 0 && beta == 0 {
            continue;
        }
        let mut v = [0; 4];
        v[a] = alpha;
        v[b] = beta;
        let lin = f.add(f.mul(grad[a], alpha), f.mul(grad[b], beta));
        v[z] = f.neg(f.mul(lin, f.inv(grad[z])));
        return Ok(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(0).len(), 1);
        assert_eq!(monomials(4).len(), 35);
        assert_eq!(monomials(5).len(), 56);
        assert!(monomials(3).iter().all(|m| m.iter().sum::<u32>() == 3));
    }

    #[test]
    fn plane_has_zero_jet() {
        let s = SurfaceInstance::from_terms(field(), &[([0, 0, 0, 1], 1)]).unwrap();
        let jet = jet_parametrize(&s, &[1, 0, 0, 0], 5, IDENTITY_FRAME).unwrap();
        assert!(jet.phi.is_zero());
    }

    #[test]
    fn quadric_local_model() {
        // x0 x3 - x1 x2 at (1,0,0,0): z = xy
        let s = SurfaceInstance::from_terms(field(), &[([1, 0, 0, 1], 1), ([0, 1, 1, 0], -1)]).unwrap();
        let jet = jet_parametrize(&s, &[1, 0, 0, 0], 6, IDENTITY_FRAME).unwrap();
        let mut expected = BiSeries::zero(6);
        expected.set(1, 1, 1);
        assert_eq!(jet.phi, expected);
    }

    #[test]
    fn random_quartic_jet_residual_vanishes() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = random_surface(4, f, &mut rng).unwrap();
        let p = sample_surface_point(&s, &mut rng, 50).unwrap();
        let jet = jet_parametrize(&s, &p, 4, IDENTITY_FRAME).unwrap();
        assert_eq!(jet.phi.coeff(0, 0), 0);
        assert!(eval_on_chart(&s, &jet.coordinate_series(&f)).is_zero());
    }

    #[test]
    fn sampled_points_are_smooth_points_of_the_surface() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..=5 {
            let s = random_surface(d, f, &mut rng).unwrap();
            for _ in 0..5 {
                let p = sample_surface_point(&s, &mut rng, 50).unwrap();
                assert_eq!(s.eval(&p), 0);
                assert!(s.gradient(&p).iter().any(|&c| c != 0));
            }
        }
    }

    #[test]
    fn seeded_surfaces_are_reproducible() {
        let f = field();
        let a = random_surface(4, f, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = random_surface(4, f, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let c = random_surface(4, f, &mut ChaCha8Rng::seed_from_u64(6)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn tangent_frame_follows_direction() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let s = random_surface(3, f, &mut rng).unwrap();
        let p = sample_surface_point(&s, &mut rng, 50).unwrap();
        let v = random_tangent(&s, &p, &mut rng).unwrap();
        let frame = frame_for_direction(&s, &p, &v).unwrap();
        let jet = jet_parametrize(&s, &p, 3, frame).unwrap();
        assert_eq!(jet.s_direction(), v);
        let mut bad = v;
        bad[jet.vars[2]] = f.add(bad[jet.vars[2]], 1);
        assert_eq!(frame_for_direction(&s, &p, &bad), Err(OracleError::NotTangent));
    }
}
