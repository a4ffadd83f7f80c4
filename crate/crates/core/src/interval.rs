//! Finite unions of disjoint closed reward intervals.
//!
//! Every set is kept normalized: intervals are sorted, pairwise disjoint and
//! never touch (`[a, b] ∪ [b, c]` collapses to `[a, c]`). Upper bounds may be
//! `+∞`. Two normalized sets describing the same points are structurally equal.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::rational::{render, Rational};

/// A closed interval `[lo, hi]`; `hi = None` means `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Option<Rational>,
}

impl Interval {
    /// Returns `None` when `lo > hi`.
    pub fn new(lo: Rational, hi: Option<Rational>) -> Option<Self> {
        match &hi {
            Some(h) if *h < lo => None,
            _ => Some(Interval { lo, hi }),
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Option<Self> {
        Self::new(lo, Some(hi))
    }

    pub fn at_least(lo: Rational) -> Self {
        Interval { lo, hi: None }
    }

    pub fn point(at: Rational) -> Self {
        Interval {
            hi: Some(at.clone()),
            lo: at,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    /// `None` for an unbounded interval.
    pub fn hi(&self) -> Option<&Rational> {
        self.hi.as_ref()
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi.is_none()
    }

    pub fn contains(&self, r: &Rational) -> bool {
        *r >= self.lo && self.hi.as_ref().is_none_or(|h| r <= h)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = min_upper(self.hi.as_ref(), other.hi.as_ref()).cloned();
        Interval::new(lo, hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hi {
            Some(h) => write!(f, "[{}, {}]", render(&self.lo), render(h)),
            None => write!(f, "[{}, inf)", render(&self.lo)),
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("hi", &self.hi.as_ref().map_or("inf".to_string(), render))?;
        map.serialize_entry("lo", &render(&self.lo))?;
        map.end()
    }
}

fn min_upper<'a>(a: Option<&'a Rational>, b: Option<&'a Rational>) -> Option<&'a Rational> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

fn cmp_upper(a: Option<&Rational>, b: Option<&Rational>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

/// Normalized union of closed intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// `[0, ∞)`, the set of all admissible rewards.
    pub fn nonnegative() -> Self {
        IntervalSet {
            intervals: vec![Interval::at_least(Rational::zero())],
        }
    }

    pub fn from_intervals(items: impl IntoIterator<Item = Interval>) -> Self {
        let mut items: Vec<Interval> = items.into_iter().collect();
        items.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(items.len());
        for next in items {
            if let Some(last) = merged.last_mut() {
                let touches = last.hi.as_ref().is_none_or(|h| next.lo <= *h);
                if touches {
                    if cmp_upper(next.hi.as_ref(), last.hi.as_ref()) == Ordering::Greater {
                        last.hi = next.hi;
                    }
                    continue;
                }
            }
            merged.push(next);
        }
        IntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, r: &Rational) -> bool {
        // sorted, so a binary search on the lower ends finds the only candidate
        let idx = self.intervals.partition_point(|iv| iv.lo <= *r);
        idx > 0 && self.intervals[idx - 1].contains(r)
    }

    /// Smallest member, if any.
    pub fn minimum(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    /// Pairwise intersection of two normalized sets, merged in one linear sweep.
    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            if let Some(piece) = a[i].intersect(&b[j]) {
                out.push(piece);
            }
            // drop whichever interval ends first; the other may still overlap later ones
            match cmp_upper(a[i].hi.as_ref(), b[j].hi.as_ref()) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        // pieces of normalized inputs are already disjoint and sorted, but may touch
        IntervalSet::from_intervals(out)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::closed(int(lo), int(hi)).unwrap()
    }

    #[test]
    fn pairwise_intersection_example() {
        let a = IntervalSet::from_intervals([iv(0, 2), iv(4, 6)]);
        let b = IntervalSet::from_intervals([iv(1, 5)]);
        assert_eq!(a.intersect(&b), IntervalSet::from_intervals([iv(1, 2), iv(4, 5)]));
    }

    #[test]
    fn identity_and_annihilator() {
        let x = IntervalSet::from_intervals([iv(1, 3), Interval::at_least(int(7))]);
        assert_eq!(x.intersect(&IntervalSet::nonnegative()), x);
        assert_eq!(x.intersect(&IntervalSet::empty()), IntervalSet::empty());
    }

    #[test]
    fn touching_intervals_merge() {
        let x = IntervalSet::from_intervals([iv(2, 3), iv(0, 2), iv(5, 5)]);
        assert_eq!(x.intervals(), &[iv(0, 3), iv(5, 5)]);
        assert!(x.contains(&int(5)));
        assert!(!x.contains(&ratio(9, 2)));
        assert_eq!(x.minimum(), Some(&int(0)));
    }

    #[test]
    fn isolated_points_survive_intersection() {
        let a = IntervalSet::from_intervals([iv(0, 1)]);
        let b = IntervalSet::from_intervals([iv(1, 4)]);
        assert_eq!(a.intersect(&b).intervals(), &[Interval::point(int(1))]);
    }

    #[test]
    fn reversed_bounds_rejected() {
        assert!(Interval::closed(int(2), int(1)).is_none());
    }

    #[test]
    fn json_shape() {
        let x = IntervalSet::from_intervals([iv(1, 2), Interval::at_least(ratio(5, 2))]);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"[{"hi":"2","lo":"1"},{"hi":"inf","lo":"5/2"}]"#
        );
    }

    fn arb_set() -> impl Strategy<Value = IntervalSet> {
        prop::collection::vec((0i64..40, 0i64..8, any::<bool>()), 0..5).prop_map(|raw| {
            IntervalSet::from_intervals(raw.into_iter().map(|(lo, w, open)| {
                if open && lo > 30 {
                    Interval::at_least(ratio(lo, 2))
                } else {
                    Interval::closed(ratio(lo, 2), ratio(lo + w, 2)).unwrap()
                }
            }))
        })
    }

    proptest! {
        #[test]
        fn intersection_is_commutative_and_associative(a in arb_set(), b in arb_set(), c in arb_set()) {
            prop_assert_eq!(a.intersect(&b), b.intersect(&a));
            prop_assert_eq!(a.intersect(&b).intersect(&c), a.intersect(&b.intersect(&c)));
            prop_assert_eq!(a.intersect(&IntervalSet::nonnegative()), a.clone());
        }

        #[test]
        fn intersection_matches_pointwise_membership(a in arb_set(), b in arb_set(), k in 0i64..100) {
            let r = ratio(k, 4);
            prop_assert_eq!(a.intersect(&b).contains(&r), a.contains(&r) && b.contains(&r));
            prop_assert_eq!(a.union(&b).contains(&r), a.contains(&r) || b.contains(&r));
        }

        #[test]
        fn normalized_sets_are_sorted_and_separated(a in arb_set()) {
            for pair in a.intervals().windows(2) {
                let hi = pair[0].hi().expect("only the last interval may be unbounded");
                prop_assert!(hi < pair[1].lo());
            }
        }
    }
}
