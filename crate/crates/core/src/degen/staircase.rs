//! Schemes supported on the curve `C = {y = 0}` and their monomial ideals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dims::fat_degree;

/// A fat point or a `δ_{m,n}`-point whose distinguished direction runs along `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OnCurveScheme {
    Fat { m: u32 },
    DeltaAligned { m: u32, n: u32 },
}

impl OnCurveScheme {
    /// `DeltaAligned(m, 0)` is the fat point of multiplicity `m`; `m = 0` is empty.
    pub fn normalized(m: u32, n: u32) -> Option<Self> {
        match (m, n) {
            (0, _) => None,
            (m, 0) => Some(Self::Fat { m }),
            (m, n) => Some(Self::DeltaAligned { m, n }),
        }
    }

    pub fn multiplicity(&self) -> u32 {
        match *self {
            Self::Fat { m } | Self::DeltaAligned { m, .. } => m,
        }
    }

    pub fn degree(&self) -> i64 {
        match *self {
            Self::Fat { m } => fat_degree(m),
            Self::DeltaAligned { m, n } => fat_degree(m) + n as i64,
        }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, Self::DeltaAligned { .. })
    }
}

impl fmt::Display for OnCurveScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fat { m } => write!(f, "Fat({m})"),
            Self::DeltaAligned { m, n } => write!(f, "delta_{{{m},{n}}}"),
        }
    }
}

/// Length of the scheme cut on `C`.
pub fn staircase_restrict(sch: OnCurveScheme) -> u32 {
    match sch {
        OnCurveScheme::Fat { m } => m,
        OnCurveScheme::DeltaAligned { m, .. } => m + 1,
    }
}

/// Residual scheme after removing `C` once.
pub fn staircase_colon(sch: OnCurveScheme) -> Option<OnCurveScheme> {
    match sch {
        OnCurveScheme::Fat { m } => OnCurveScheme::normalized(m - 1, 0),
        OnCurveScheme::DeltaAligned { m, n } => OnCurveScheme::normalized(m - 1, n - 1),
    }
}

/// Monomial ideal in `k[x, y]`; generators `x^a y^b` stored as `(a, b)`,
/// minimal and sorted by decreasing `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StaircaseIdeal {
    generators: Vec<(u32, u32)>,
}

impl StaircaseIdeal {
    pub fn new(generators: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut gens: Vec<(u32, u32)> = generators.into_iter().collect();
        gens.sort_unstable_by(|p, q| q.0.cmp(&p.0).then(p.1.cmp(&q.1)));
        gens.dedup();
        let all = gens.clone();
        gens.retain(|&(a, b)| !all.iter().any(|&(c, d)| (c, d) != (a, b) && c <= a && d <= b));
        Self { generators: gens }
    }

    pub fn unit() -> Self {
        Self::new([(0, 0)])
    }

    pub fn generators(&self) -> &[(u32, u32)] {
        &self.generators
    }

    /// `(x, y)^m`.
    pub fn fat(m: u32) -> Self {
        Self::new((0..=m).map(|j| (m - j, j)))
    }

    /// `(x^{m+1}, x^m y, ..., x^{m-n+2} y^{n-1}, x^{m-n} y^n, ..., y^m)`.
    pub fn delta(m: u32, n: u32) -> Self {
        assert!(n <= m, "tangency order exceeds multiplicity");
        let low = (0..n).map(move |j| (m + 1 - j, j));
        let high = (n..=m).map(move |j| (m - j, j));
        Self::new(low.chain(high))
    }

    pub fn of_scheme(sch: OnCurveScheme) -> Self {
        match sch {
            OnCurveScheme::Fat { m } => Self::fat(m),
            OnCurveScheme::DeltaAligned { m, n } => Self::delta(m, n),
        }
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.generators.iter().any(|&(c, d)| c <= a && d <= b)
    }

    pub fn is_unit(&self) -> bool {
        self.contains(0, 0)
    }

    /// Number of standard monomials; `None` if infinite.
    pub fn colength(&self) -> Option<u64> {
        let max_a = self.generators.iter().find(|g| g.1 == 0)?.0;
        let mut total = 0u64;
        for a in 0..max_a {
            let b = self.generators.iter().filter(|g| g.0 <= a).map(|g| g.1).min()?;
            total += b as u64;
        }
        Some(total)
    }

    /// `I + (y)`.
    pub fn plus_y(&self) -> Self {
        Self::new(self.generators.iter().copied().chain([(0, 1)]))
    }

    /// `I : y`.
    pub fn colon_y(&self) -> Self {
        Self::new(self.generators.iter().map(|&(a, b)| (a, b.saturating_sub(1))))
    }

    /// The on-curve scheme cut out by this ideal, if it has one of the two shapes.
    pub fn identify(&self) -> Option<OnCurveScheme> {
        if self.is_unit() {
            return None;
        }
        let m = self.generators.iter().map(|g| g.0 + g.1).min()?;
        if *self == Self::fat(m) {
            return Some(OnCurveScheme::Fat { m });
        }
        (1..=m).find(|&n| *self == Self::delta(m, n)).map(|n| OnCurveScheme::DeltaAligned { m, n })
    }
}

/// Length of `sch ∩ C` computed from the ideal.
pub fn restrict_by_ideal(sch: OnCurveScheme) -> u64 {
    StaircaseIdeal::of_scheme(sch).plus_y().colength().expect("zero-dimensional")
}

/// Residual of `sch` with respect to `C`, computed from the ideal.
/// The outer `None` means the quotient is not a fat or aligned delta point.
pub fn colon_by_ideal(sch: OnCurveScheme) -> Option<Option<OnCurveScheme>> {
    let q = StaircaseIdeal::of_scheme(sch).colon_y();
    if q.is_unit() {
        Some(None)
    } else {
        q.identify().map(Some)
    }
}
