//! Geodesic distance between two vertices from their words alone.
//!
//! Two words first differ (from the coarse end) at scale position `h`; both
//! vertices then live in distinct copies `x_h` of a level-`h` sub-carpet, and
//! the ordered pair of copy indices decides whether the Manhattan distance of
//! the embedded points is exact or a hole sits between them. When a hole
//! blocks the way the path runs along one of its sides:
//!
//! ```text
//!      D ------ C
//!      |  hole  |        side = 3^(l-1)
//!      A ------ B
//! ```
//!
//! [`Rule::Cases`] follows the four-case analysis literally: the binding hole
//! is found from the western (letter 7) or southern (letter 1) word only.
//! [`Rule::Complete`] scans every scale for a hole whose band strictly
//! contains both endpoints and that lies between them; it agrees with
//! breadth-first search on every pair that has been checked.

use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::{l1, pow3, LatticePoint};
use crate::word::{check_levels, Vertex, Word, XLetter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    /// Identical copy sequences: both vertices are corners of one unit square.
    SameSquare,
    /// No hole between the copies.
    CaseI,
    /// Opposite middle copies around the central hole.
    CaseII,
    /// Copies two steps apart along a side.
    CaseIII,
    /// Neighbouring copies along a side.
    CaseIV,
}

impl CaseKind {
    pub const fn name(self) -> &'static str {
        match self {
            CaseKind::SameSquare => "SameSquare",
            CaseKind::CaseI => "CaseI",
            CaseKind::CaseII => "CaseII",
            CaseKind::CaseIII => "CaseIII",
            CaseKind::CaseIV => "CaseIV",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
    None,
}

impl Axis {
    pub const fn name(self) -> &'static str {
        match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
            Axis::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DistanceCase {
    pub kind: CaseKind,
    pub travel_axis: Axis,
    /// The inputs were swapped so that the first word carries the first copy
    /// index of the dispatch entry (the western or southern one).
    pub swapped: bool,
}

/// One entry of the copy-pair dispatch table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dispatch {
    pub first: u8,
    pub second: u8,
    pub kind: CaseKind,
    pub axis: Axis,
    /// Copy index that marks the leading word as sitting beside a hole.
    pub blocking: Option<u8>,
}

const fn entry(first: u8, second: u8, kind: CaseKind, axis: Axis, blocking: Option<u8>) -> Dispatch {
    Dispatch { first, second, kind, axis, blocking }
}

use Axis::{Horizontal as H, None as N, Vertical as V};
use CaseKind::{CaseI, CaseII, CaseIII, CaseIV};

/// All 28 unordered pairs of distinct copy indices, each oriented so that the
/// first index is the western (horizontal travel) or southern (vertical
/// travel) copy.
pub const DISPATCH: [Dispatch; 28] = [
    entry(0, 4, CaseI, N, None),
    entry(2, 6, CaseI, N, None),
    entry(0, 3, CaseI, N, None),
    entry(1, 4, CaseI, N, None),
    entry(2, 5, CaseI, N, None),
    entry(3, 6, CaseI, N, None),
    entry(4, 7, CaseI, N, None),
    entry(5, 0, CaseI, N, None),
    entry(6, 1, CaseI, N, None),
    entry(7, 2, CaseI, N, None),
    entry(1, 3, CaseI, N, None),
    entry(3, 5, CaseI, N, None),
    entry(5, 7, CaseI, N, None),
    entry(7, 1, CaseI, N, None),
    entry(1, 5, CaseII, V, None),
    entry(7, 3, CaseII, H, None),
    entry(0, 2, CaseIII, H, Some(7)),
    entry(6, 4, CaseIII, H, Some(7)),
    entry(2, 4, CaseIII, V, Some(1)),
    entry(0, 6, CaseIII, V, Some(1)),
    entry(0, 1, CaseIV, H, Some(7)),
    entry(1, 2, CaseIV, H, Some(7)),
    entry(6, 5, CaseIV, H, Some(7)),
    entry(5, 4, CaseIV, H, Some(7)),
    entry(0, 7, CaseIV, V, Some(1)),
    entry(7, 6, CaseIV, V, Some(1)),
    entry(2, 3, CaseIV, V, Some(1)),
    entry(3, 4, CaseIV, V, Some(1)),
];

// DISPATCH index + 1 for each ordered pair, 0 on the diagonal.
const LOOKUP: [[u8; 8]; 8] = {
    let mut table = [[0u8; 8]; 8];
    let mut i = 0;
    while i < DISPATCH.len() {
        let e = DISPATCH[i];
        table[e.first as usize][e.second as usize] = (i + 1) as u8;
        table[e.second as usize][e.first as usize] = (i + 1) as u8;
        i += 1;
    }
    table
};

/// Dispatch entry for an unordered pair of distinct copy indices, plus
/// whether the given order is the reverse of the entry's orientation.
pub fn dispatch(x1: XLetter, x2: XLetter) -> Option<(Dispatch, bool)> {
    match LOOKUP[x1.value() as usize][x2.value() as usize] {
        0 => None,
        i => {
            let e = DISPATCH[i as usize - 1];
            Some((e, e.first != x1.value()))
        }
    }
}

/// The four corners of a square hole, `A` bottom-left, counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HoleCorners {
    pub a: LatticePoint,
    pub b: LatticePoint,
    pub c: LatticePoint,
    pub d: LatticePoint,
    /// Side length `3^(l-1)`.
    pub side: i64,
    /// Level `l + 1` of the sub-carpet whose central hole this is.
    pub level: usize,
}

impl HoleCorners {
    fn from_bottom_left(a: LatticePoint, obstruction: usize) -> Self {
        let side = pow3(obstruction - 1);
        HoleCorners {
            a,
            b: a.offset(side, 0),
            c: a.offset(side, side),
            d: a.offset(0, side),
            side,
            level: obstruction + 1,
        }
    }
}

impl fmt::Display for HoleCorners {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Which side of the hole the path follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Direct,
    /// South side, `A -> B`.
    ViaAB,
    /// East side, `B -> C`.
    ViaBC,
    /// North side, `D -> C`.
    ViaCD,
    /// West side, `A -> D`.
    ViaAD,
}

impl Route {
    pub const fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::ViaAB => "via_AB",
            Route::ViaBC => "via_BC",
            Route::ViaCD => "via_CD",
            Route::ViaAD => "via_AD",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceTrace {
    pub case: DistanceCase,
    pub h: Option<usize>,
    /// `l` (or `l'`): the hole has side `3^(l-1)`. `None` when no hole binds.
    pub obstruction_index: Option<usize>,
    pub corners: Option<HoleCorners>,
    pub route: Route,
    pub value: u64,
}

/// How the binding obstruction is located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Rule {
    /// Four-case analysis; the obstruction index is read from the leading
    /// word's copy letters only.
    #[default]
    Cases,
    /// Every scale is scanned for a hole that separates the two endpoints.
    Complete,
}

impl Rule {
    pub const fn name(self) -> &'static str {
        match self {
            Rule::Cases => "cases",
            Rule::Complete => "complete",
        }
    }
}

/// Largest 1-based position where the copy sequences differ.
pub fn find_h(w1: &Word, w2: &Word) -> Result<Option<usize>> {
    check_levels(w1, w2)?;
    Ok(find_h_unchecked(w1, w2))
}

#[inline]
fn find_h_unchecked(w1: &Word, w2: &Word) -> Option<usize> {
    w1.copies()
        .iter()
        .zip(w2.copies())
        .rposition(|(a, b)| a != b)
        .map(|i| i + 1)
}

/// Largest `j < h` with `x_j = blocking`, or `None` when there is none.
pub fn obstruction_index(w1: &Word, h: usize, blocking: XLetter) -> Option<usize> {
    let end = h.saturating_sub(1).min(w1.copies().len());
    w1.copies()[..end].iter().rposition(|&x| x == blocking).map(|j| j + 1)
}

/// Corners of the central hole of the level-`(l+1)` sub-carpet containing
/// `w1`, in the coordinates of the whole carpet. `l = h` gives the central
/// hole of the smallest sub-carpet containing both words.
pub fn hole_corners(w1: &Word, h: usize, obstruction: usize) -> Result<HoleCorners> {
    if obstruction == 0 || obstruction > h || h >= w1.level() {
        return Err(Error::Precondition("hole corners need 1 <= l <= h <= level - 1"));
    }
    let side = pow3(obstruction - 1);
    let mut a = LatticePoint::new(side, side);
    for k in obstruction + 1..w1.level() {
        let v = w1.x(k).vector();
        let s = pow3(k - 1);
        a = a.offset(s * v.x, s * v.y);
    }
    Ok(HoleCorners::from_bottom_left(a, obstruction))
}

/// Copy-pair classification of two words that differ at position `h`.
pub fn classify(w1: &Word, w2: &Word, h: Option<usize>) -> DistanceCase {
    let Some(h) = h else {
        return DistanceCase { kind: CaseKind::SameSquare, travel_axis: Axis::None, swapped: false };
    };
    match dispatch(w1.x(h), w2.x(h)) {
        Some((e, swapped)) => DistanceCase { kind: e.kind, travel_axis: e.axis, swapped },
        // equal letters at h cannot happen for a genuine h
        None => DistanceCase { kind: CaseKind::SameSquare, travel_axis: Axis::None, swapped: false },
    }
}

/// Length of the shortest path from `p1` to `p2` that follows one side of
/// the hole. `p1` is the western point for horizontal travel and the
/// southern point for vertical travel.
pub fn route_around(p1: LatticePoint, p2: LatticePoint, hc: &HoleCorners, axis: Axis) -> (Route, u64) {
    let side = hc.side as u64;
    match axis {
        Axis::Vertical => {
            if p1.x + p2.x >= hc.a.x + hc.b.x {
                (Route::ViaBC, l1(p1, hc.b) + side + l1(hc.c, p2))
            } else {
                (Route::ViaAD, l1(p1, hc.a) + side + l1(hc.d, p2))
            }
        }
        Axis::Horizontal => {
            if p1.y + p2.y >= hc.a.y + hc.d.y {
                (Route::ViaCD, l1(p1, hc.d) + side + l1(hc.c, p2))
            } else {
                (Route::ViaAB, l1(p1, hc.a) + side + l1(hc.b, p2))
            }
        }
        Axis::None => (Route::Direct, l1(p1, p2)),
    }
}

/// Distance between two words of the same level under [`Rule::Cases`].
pub fn distance(w1: &Word, w2: &Word) -> Result<DistanceTrace> {
    distance_with(Rule::Cases, w1, w2)
}

pub fn distance_with(rule: Rule, w1: &Word, w2: &Word) -> Result<DistanceTrace> {
    check_levels(w1, w2)?;
    Ok(trace(rule, w1, w1.point(), w2, w2.point()))
}

/// Distance between two table vertices; the points are taken as given.
#[inline]
pub fn vertex_distance(rule: Rule, u: &Vertex, v: &Vertex) -> u64 {
    trace(rule, &u.word, u.point, &v.word, v.point).value
}

#[inline]
pub fn vertex_trace(rule: Rule, u: &Vertex, v: &Vertex) -> DistanceTrace {
    trace(rule, &u.word, u.point, &v.word, v.point)
}

fn trace(rule: Rule, w1: &Word, p1: LatticePoint, w2: &Word, p2: LatticePoint) -> DistanceTrace {
    let h = find_h_unchecked(w1, w2);
    let case = classify(w1, w2, h);
    let direct = DistanceTrace {
        case,
        h,
        obstruction_index: None,
        corners: None,
        route: Route::Direct,
        value: l1(p1, p2),
    };
    let Some(h) = h else { return direct };
    match rule {
        Rule::Cases => cases_rule(direct, h, w1, p1, w2, p2),
        Rule::Complete => complete_rule(direct, w1.level(), p1, p2),
    }
}

fn cases_rule(
    direct: DistanceTrace,
    h: usize,
    w1: &Word,
    p1: LatticePoint,
    w2: &Word,
    p2: LatticePoint,
) -> DistanceTrace {
    let case = direct.case;
    let (lead, p_lead, p_other) = if case.swapped { (w2, p2, p1) } else { (w1, p1, p2) };
    let (e, _) = dispatch(w1.x(h), w2.x(h)).expect("h marks distinct letters");
    let obstruction = match e.kind {
        CaseKind::SameSquare | CaseKind::CaseI => return direct,
        CaseKind::CaseII => h,
        CaseKind::CaseIII | CaseKind::CaseIV => {
            let letter = XLetter::new(e.blocking.expect("side cases carry a blocking letter")).unwrap();
            match obstruction_index(lead, h, letter) {
                Some(l) => l,
                None => return direct,
            }
        }
    };
    let corners = hole_corners(lead, h, obstruction).expect("1 <= l <= h < level");
    let (route, value) = route_around(p_lead, p_other, &corners, e.axis);
    DistanceTrace {
        obstruction_index: Some(obstruction),
        corners: Some(corners),
        route,
        value,
        ..direct
    }
}

/// The largest hole whose open band (transverse extent) contains both
/// transverse coordinates and whose along-extent fits between the two
/// along coordinates. Returns `(scale exponent, hole start along, band start)`.
fn separating_hole(level: usize, along: (i64, i64), across: (i64, i64)) -> Option<(usize, i64, i64)> {
    let (lo, hi) = if along.0 <= along.1 { along } else { (along.1, along.0) };
    for k in (0..level.saturating_sub(1)).rev() {
        let s = pow3(k);
        let block = 3 * s;
        let band = |b: i64| {
            let r = b.rem_euclid(block);
            (s < r && r < 2 * s).then(|| b.div_euclid(block))
        };
        let (Some(q1), Some(q2)) = (band(across.0), band(across.1)) else { continue };
        if q1 != q2 {
            continue;
        }
        // first hole start at or after `lo`
        let m = (lo - s + block - 1).div_euclid(block);
        let start = block * m + s;
        if start + s <= hi {
            return Some((k, start, block * q1 + s));
        }
    }
    None
}

fn complete_rule(direct: DistanceTrace, level: usize, p1: LatticePoint, p2: LatticePoint) -> DistanceTrace {
    let found = if let Some((k, start, band)) = separating_hole(level, (p1.x, p2.x), (p1.y, p2.y)) {
        Some((Axis::Horizontal, k, LatticePoint::new(start, band), p1.x <= p2.x))
    } else {
        separating_hole(level, (p1.y, p2.y), (p1.x, p2.x))
            .map(|(k, start, band)| (Axis::Vertical, k, LatticePoint::new(band, start), p1.y <= p2.y))
    };
    let Some((axis, k, a, in_order)) = found else { return direct };
    let corners = HoleCorners::from_bottom_left(a, k + 1);
    let (first, second) = if in_order { (p1, p2) } else { (p2, p1) };
    let (route, value) = route_around(first, second, &corners, axis);
    DistanceTrace {
        obstruction_index: Some(k + 1),
        corners: Some(corners),
        route,
        value,
        ..direct
    }
}
