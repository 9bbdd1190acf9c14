//! Bidegrees, shifts, windows and dimension tables.
//!
//! Every higher-level computation in this crate is windowed: it works on a
//! finite rectangle of bidegrees and records the subrectangle on which its
//! output is certified exact. A [`DimTable`] refuses to answer outside its
//! certified window instead of silently returning zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{EngineError, Result};

/// A lattice bidegree: `internal` is the subscript grading, `cohomological`
/// the superscript grading.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Bidegree {
    pub internal: i64,
    pub cohomological: i64,
}

pub const fn bd(internal: i64, cohomological: i64) -> Bidegree {
    Bidegree {
        internal,
        cohomological,
    }
}

impl Bidegree {
    pub fn plus(&self, other: Bidegree) -> Bidegree {
        bd(
            self.internal + other.internal,
            self.cohomological + other.cohomological,
        )
    }

    pub fn minus(&self, other: Bidegree) -> Bidegree {
        bd(
            self.internal - other.internal,
            self.cohomological - other.cohomological,
        )
    }

    /// One step up in cohomological degree (the direction of differentials).
    pub fn up(&self) -> Bidegree {
        bd(self.internal, self.cohomological + 1)
    }

    pub fn down(&self) -> Bidegree {
        bd(self.internal, self.cohomological - 1)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.internal, self.cohomological)
    }
}

/// A twist/shift pair `(m)[n]`: `twist` moves the internal grading,
/// `shift` the cohomological grading.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ShiftSpec {
    pub twist: i64,
    pub shift: i64,
}

impl ShiftSpec {
    pub fn twist(m: i64) -> ShiftSpec {
        ShiftSpec { twist: m, shift: 0 }
    }

    pub fn shift(n: i64) -> ShiftSpec {
        ShiftSpec { twist: 0, shift: n }
    }

    pub fn new(twist: i64, shift: i64) -> ShiftSpec {
        ShiftSpec { twist, shift }
    }

    pub fn compose(&self, other: ShiftSpec) -> ShiftSpec {
        ShiftSpec {
            twist: self.twist + other.twist,
            shift: self.shift + other.shift,
        }
    }
}

/// The component of the shifted object at `b` equals the component of the
/// original object at the returned bidegree.
pub fn apply_shift(b: Bidegree, s: ShiftSpec) -> Bidegree {
    bd(b.internal + s.twist, b.cohomological + s.shift)
}

/// Bigraded dual convention: the dual's component at `b` is the linear dual
/// of the original component at `(-internal, -cohomological)`.
pub fn dual_bidegree(b: Bidegree) -> Bidegree {
    bd(-b.internal, -b.cohomological)
}

/// A finite rectangle of bidegrees.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Window {
    pub i_min: i64,
    pub i_max: i64,
    pub j_min: i64,
    pub j_max: i64,
}

impl Window {
    pub fn new(i_min: i64, i_max: i64, j_min: i64, j_max: i64) -> Result<Window> {
        if i_min > i_max || j_min > j_max {
            return Err(EngineError::InvalidWindow(format!(
                "internal [{i_min},{i_max}], cohomological [{j_min},{j_max}]"
            )));
        }
        Ok(Window {
            i_min,
            i_max,
            j_min,
            j_max,
        })
    }

    /// The empty-marker window used when nothing is certified.
    pub fn empty() -> Window {
        Window {
            i_min: 1,
            i_max: 0,
            j_min: 1,
            j_max: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.i_min > self.i_max || self.j_min > self.j_max
    }

    pub fn contains(&self, b: Bidegree) -> bool {
        self.i_min <= b.internal
            && b.internal <= self.i_max
            && self.j_min <= b.cohomological
            && b.cohomological <= self.j_max
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        if other.is_empty() {
            return true;
        }
        self.i_min <= other.i_min
            && other.i_max <= self.i_max
            && self.j_min <= other.j_min
            && other.j_max <= self.j_max
    }

    pub fn intersect(&self, other: &Window) -> Window {
        let w = Window {
            i_min: self.i_min.max(other.i_min),
            i_max: self.i_max.min(other.i_max),
            j_min: self.j_min.max(other.j_min),
            j_max: self.j_max.min(other.j_max),
        };
        if w.is_empty() {
            Window::empty()
        } else {
            w
        }
    }

    /// Shrinks the cohomological extent by `lo` at the bottom and `hi` at
    /// the top (used when an operation consumes one differential step).
    pub fn shrink_coh(&self, lo: i64, hi: i64) -> Window {
        let w = Window {
            i_min: self.i_min,
            i_max: self.i_max,
            j_min: self.j_min + lo,
            j_max: self.j_max - hi,
        };
        if w.is_empty() {
            Window::empty()
        } else {
            w
        }
    }

    pub fn pad(&self, i_lo: i64, i_hi: i64, j_lo: i64, j_hi: i64) -> Window {
        Window {
            i_min: self.i_min - i_lo,
            i_max: self.i_max + i_hi,
            j_min: self.j_min - j_lo,
            j_max: self.j_max + j_hi,
        }
    }

    /// Translate: the shifted object's data at `b` lives at
    /// `apply_shift(b, s)` in the original, so the shifted window is the
    /// original one translated by `-s`.
    pub fn translate(&self, s: ShiftSpec) -> Window {
        Window {
            i_min: self.i_min - s.twist,
            i_max: self.i_max - s.twist,
            j_min: self.j_min - s.shift,
            j_max: self.j_max - s.shift,
        }
    }

    /// Mirror image under `dual_bidegree`.
    pub fn dual(&self) -> Window {
        if self.is_empty() {
            return Window::empty();
        }
        Window {
            i_min: -self.i_max,
            i_max: -self.i_min,
            j_min: -self.j_max,
            j_max: -self.j_min,
        }
    }

    /// Row-major iteration, internal degree outermost; deterministic.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Bidegree>> {
        if self.is_empty() {
            return Box::new(std::iter::empty());
        }
        let w = *self;
        Box::new(
            (w.i_min..=w.i_max).flat_map(move |i| (w.j_min..=w.j_max).map(move |j| bd(i, j))),
        )
    }

    pub fn cell_count(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            ((self.i_max - self.i_min + 1) * (self.j_max - self.j_min + 1)) as usize
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "internal [], cohomological []")
        } else {
            write!(
                f,
                "internal [{},{}], cohomological [{},{}]",
                self.i_min, self.i_max, self.j_min, self.j_max
            )
        }
    }
}

/// A per-bidegree dimension function with a certified validity window.
///
/// Only nonzero entries are stored; every stored nonzero entry lies inside
/// `valid`. Lookups outside `valid` return an error rather than zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimTable {
    dims: BTreeMap<Bidegree, usize>,
    valid: Window,
}

impl DimTable {
    pub fn new(valid: Window) -> DimTable {
        DimTable {
            dims: BTreeMap::new(),
            valid,
        }
    }

    pub fn valid(&self) -> Window {
        self.valid
    }

    pub fn set(&mut self, b: Bidegree, dim: usize) {
        if dim == 0 {
            self.dims.remove(&b);
            return;
        }
        assert!(
            self.valid.contains(b),
            "nonzero dimension recorded outside the certified window: {b} not in {}",
            self.valid
        );
        self.dims.insert(b, dim);
    }

    pub fn get(&self, b: Bidegree) -> Result<usize> {
        if !self.valid.contains(b) {
            return Err(EngineError::OutOfWindow {
                bidegree: b,
                valid: self.valid,
            });
        }
        Ok(self.dims.get(&b).copied().unwrap_or(0))
    }

    /// Nonzero entries in lexicographic bidegree order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.dims.iter().map(|(b, d)| (*b, *d))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Restricts the certified window; entries falling outside are dropped.
    pub fn restricted(&self, w: Window) -> DimTable {
        let valid = self.valid.intersect(&w);
        let mut t = DimTable::new(valid);
        for (b, d) in self.nonzero() {
            if valid.contains(b) {
                t.set(b, d);
            }
        }
        t
    }

    /// Table of the shifted object: entry at `b` is the original entry at
    /// `apply_shift(b, s)`.
    pub fn shifted(&self, s: ShiftSpec) -> DimTable {
        let mut t = DimTable::new(self.valid.translate(s));
        for (b, d) in self.nonzero() {
            t.set(b.minus(bd(s.twist, s.shift)), d);
        }
        t
    }

    /// Table of the k-dual: entry at `b` is the original entry at `-b`.
    pub fn dualized(&self) -> DimTable {
        let mut t = DimTable::new(self.valid.dual());
        for (b, d) in self.nonzero() {
            t.set(dual_bidegree(b), d);
        }
        t
    }

    /// Serializes to CSV: a window comment, the `internal,cohomological,dim`
    /// header, then nonzero entries sorted lexicographically.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# certified window: {}\n", self.valid));
        out.push_str("internal,cohomological,dim\n");
        for (b, d) in self.nonzero() {
            out.push_str(&format!("{},{},{}\n", b.internal, b.cohomological, d));
        }
        out
    }
}

/// Bidegrees inside `w` where the two tables disagree (empty = equal on `w`).
///
/// Fails with `WindowNotCertified` when `w` is not contained in both
/// certified windows.
pub fn table_equal(a: &DimTable, b: &DimTable, w: &Window) -> Result<Vec<Bidegree>> {
    for t in [a, b] {
        if !t.valid.contains_window(w) {
            return Err(EngineError::WindowNotCertified {
                requested: *w,
                certified: t.valid,
            });
        }
    }
    let mut mismatches = Vec::new();
    for bdg in w.iter() {
        if a.get(bdg)? != b.get(bdg)? {
            mismatches.push(bdg);
        }
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_shift_examples() {
        assert_eq!(apply_shift(bd(0, 0), ShiftSpec::new(0, 0)), bd(0, 0));
        assert_eq!(apply_shift(bd(2, -1), ShiftSpec::twist(3)), bd(5, -1));
        assert_eq!(apply_shift(bd(1, 1), ShiftSpec::shift(-2)), bd(1, -1));
    }

    #[test]
    fn dual_bidegree_involution() {
        assert_eq!(dual_bidegree(bd(0, 0)), bd(0, 0));
        assert_eq!(dual_bidegree(bd(3, -1)), bd(-3, 1));
        assert_eq!(dual_bidegree(dual_bidegree(bd(5, 2))), bd(5, 2));
    }

    #[test]
    fn shift_composition_is_group_action() {
        let s1 = ShiftSpec::new(2, -1);
        let s2 = ShiftSpec::new(-5, 3);
        let b = bd(7, 4);
        assert_eq!(
            apply_shift(apply_shift(b, s1), s2),
            apply_shift(b, s1.compose(s2))
        );
    }

    #[test]
    fn table_equal_reports_mismatches() {
        let w = Window::new(-2, 2, -2, 2).unwrap();
        let mut a = DimTable::new(w);
        let mut b = DimTable::new(w);
        a.set(bd(0, 1), 2);
        b.set(bd(0, 1), 3);
        assert_eq!(table_equal(&a, &a.clone(), &w).unwrap(), vec![]);
        assert_eq!(table_equal(&a, &b, &w).unwrap(), vec![bd(0, 1)]);
    }

    #[test]
    fn table_equal_outside_certified_window_errors() {
        let w = Window::new(-1, 1, -1, 1).unwrap();
        let big = Window::new(-5, 5, -5, 5).unwrap();
        let a = DimTable::new(w);
        let b = DimTable::new(big);
        assert!(matches!(
            table_equal(&a, &b, &big),
            Err(EngineError::WindowNotCertified { .. })
        ));
    }

    #[test]
    fn lookup_outside_window_is_loud() {
        let w = Window::new(0, 1, 0, 1).unwrap();
        let t = DimTable::new(w);
        assert!(t.get(bd(0, 0)).is_ok());
        assert!(matches!(
            t.get(bd(5, 0)),
            Err(EngineError::OutOfWindow { .. })
        ));
    }

    #[test]
    fn csv_format() {
        let w = Window::new(0, 1, 0, 0).unwrap();
        let mut t = DimTable::new(w);
        t.set(bd(1, 0), 2);
        t.set(bd(0, 0), 1);
        let csv = t.to_csv();
        assert_eq!(
            csv,
            "# certified window: internal [0,1], cohomological [0,0]\ninternal,cohomological,dim\n0,0,1\n1,0,2\n"
        );
    }

    #[test]
    fn window_iteration_deterministic() {
        let w = Window::new(0, 1, 0, 1).unwrap();
        let cells: Vec<Bidegree> = w.iter().collect();
        assert_eq!(cells, vec![bd(0, 0), bd(0, 1), bd(1, 0), bd(1, 1)]);
        assert!(Window::new(1, 0, 0, 0).is_err());
    }

    #[test]
    fn shifted_table_bookkeeping() {
        // k(-2): the table of k shifted so the entry sits at internal 2.
        let w = Window::new(-5, 5, -5, 5).unwrap();
        let mut k = DimTable::new(w);
        k.set(bd(0, 0), 1);
        let shifted = k.shifted(ShiftSpec::twist(-2));
        assert_eq!(shifted.get(bd(2, 0)).unwrap(), 1);
        assert_eq!(shifted.get(bd(0, 0)).unwrap(), 0);
    }
}
