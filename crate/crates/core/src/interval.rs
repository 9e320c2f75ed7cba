//! Closed intervals of antenna positions, with an explicit empty value.

/// A closed interval `[lo, hi]` on the waveguide axis, or the empty set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Empty,
    Closed { lo: f64, hi: f64 },
}

impl Interval {
    /// `[lo, hi]`, or `Empty` when `lo > hi` (or either bound is NaN).
    pub fn new(lo: f64, hi: f64) -> Self {
        if lo <= hi {
            Interval::Closed { lo, hi }
        } else {
            Interval::Empty
        }
    }

    pub fn point(x: f64) -> Self {
        Interval::Closed { lo: x, hi: x }
    }

    /// `[center - radius, center + radius] ∩ [0, dx]`.
    pub fn ball_in_range(center: f64, radius: f64, dx: f64) -> Self {
        Self::new((center - radius).max(0.0), (center + radius).min(dx))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            Interval::Empty => None,
            Interval::Closed { lo, hi } => Some((lo, hi)),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => Interval::new(a.max(c), b.min(d)),
            _ => Interval::Empty,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.bounds().is_some_and(|(lo, hi)| lo <= x && x <= hi)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => c <= a && b <= d,
        }
    }

    /// Zero for the empty set.
    pub fn width(&self) -> f64 {
        self.bounds().map_or(0.0, |(lo, hi)| hi - lo)
    }

    pub fn midpoint(&self) -> Option<f64> {
        self.bounds().map(|(lo, hi)| lo + 0.5 * (hi - lo))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra() {
        let a = Interval::new(0.0, 4.0);
        let b = Interval::new(3.0, 8.0);
        assert_eq!(a.intersect(&b), Interval::new(3.0, 4.0));
        assert!(a.intersect(&Interval::new(5.0, 6.0)).is_empty());
        assert!(Interval::new(2.0, 1.0).is_empty());
        assert!(Interval::new(f64::NAN, 1.0).is_empty());
        assert!(Interval::Empty.is_subset_of(&a));
        assert!(!a.is_subset_of(&Interval::Empty));
        assert!(Interval::new(1.0, 2.0).is_subset_of(&a));
        assert_eq!(Interval::point(2.0).width(), 0.0);
        assert_eq!(Interval::Empty.midpoint(), None);
        assert_eq!(a.midpoint(), Some(2.0));
        assert!(a.contains(0.0) && a.contains(4.0) && !a.contains(4.000001));
    }

    #[test]
    fn clipping() {
        assert_eq!(
            Interval::ball_in_range(1.0, 3.0, 10.0),
            Interval::new(0.0, 4.0)
        );
        assert_eq!(
            Interval::ball_in_range(9.0, 3.0, 10.0),
            Interval::new(6.0, 10.0)
        );
        assert_eq!(Interval::ball_in_range(5.0, 0.0, 10.0), Interval::point(5.0));
    }
}
