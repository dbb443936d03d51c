//! Vertex labels of the carpet graphs and their embedding into `Z^2`.
//!
//! A level-`n` word is a corner letter `y` of the innermost unit square
//! followed by `n - 1` copy indices `x_1 .. x_{n-1}`, where `x_i` picks one of
//! the eight sub-carpets at scale `3^(i-1)`. The embedded point is
//! `v_y + sum 3^(i-1) v_{x_i}`. Different words may land on the same vertex;
//! the lexicographically smallest one is the canonical label.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, ParseErrorKind, Result};
use crate::lattice::{carpet_side, pow3, LatticePoint};

/// Default cap on the level accepted by [`VertexTable::build`].
pub const DEFAULT_WORD_LEVEL_CAP: usize = 8;

/// Corner of the unit square, ordered `a < b < c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum YLetter {
    A,
    B,
    C,
    D,
}

impl YLetter {
    pub const ALL: [YLetter; 4] = [YLetter::A, YLetter::B, YLetter::C, YLetter::D];

    pub const fn vector(self) -> LatticePoint {
        match self {
            YLetter::A => LatticePoint::new(0, 0),
            YLetter::B => LatticePoint::new(1, 0),
            YLetter::C => LatticePoint::new(1, 1),
            YLetter::D => LatticePoint::new(0, 1),
        }
    }

    pub const fn as_char(self) -> char {
        match self {
            YLetter::A => 'a',
            YLetter::B => 'b',
            YLetter::C => 'c',
            YLetter::D => 'd',
        }
    }

    pub const fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(YLetter::A),
            'b' => Some(YLetter::B),
            'c' => Some(YLetter::C),
            'd' => Some(YLetter::D),
            _ => None,
        }
    }

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }
}

/// Position of a sub-carpet inside the 3x3-minus-centre model, numbered
/// counterclockwise from the bottom-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XLetter(u8);

const X_VECTORS: [LatticePoint; 8] = [
    LatticePoint::new(0, 0),
    LatticePoint::new(1, 0),
    LatticePoint::new(2, 0),
    LatticePoint::new(2, 1),
    LatticePoint::new(2, 2),
    LatticePoint::new(1, 2),
    LatticePoint::new(0, 2),
    LatticePoint::new(0, 1),
];

impl XLetter {
    pub const fn new(value: u8) -> Option<Self> {
        if value < 8 {
            Some(XLetter(value))
        } else {
            None
        }
    }

    pub fn all() -> impl Iterator<Item = XLetter> + Clone {
        (0..8).map(XLetter)
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn vector(self) -> LatticePoint {
        X_VECTORS[self.0 as usize]
    }
}

impl fmt::Display for XLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vertex label `y x_1 .. x_{n-1}`.
///
/// The derived ordering is the lexicographic one used to pick canonical
/// labels: corner letter first, then copy indices left to right. It only
/// means something between words of equal level; see [`Word::compare`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    y: YLetter,
    xs: Vec<XLetter>,
}

impl Word {
    pub fn new(y: YLetter, xs: Vec<XLetter>) -> Self {
        Word { y, xs }
    }

    /// Builds a word from raw digits, rejecting anything outside `0..=7`.
    pub fn from_digits(y: YLetter, digits: &[u8]) -> Option<Self> {
        let xs = digits.iter().map(|&d| XLetter::new(d)).collect::<Option<Vec<_>>>()?;
        Some(Word { y, xs })
    }

    /// Parses the textual form, e.g. `"b432"` at level 4.
    pub fn parse(text: &str, level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let mut chars = text.chars();
        let y = match chars.next() {
            Some(c) => YLetter::from_char(c)
                .ok_or(Error::Parse { position: 0, kind: ParseErrorKind::BadCornerLetter(c) })?,
            None => {
                return Err(Error::Parse {
                    position: 0,
                    kind: ParseErrorKind::Length { expected: level, found: 0 },
                })
            }
        };
        let mut xs = Vec::with_capacity(level - 1);
        for (i, c) in chars.enumerate() {
            let position = i + 1;
            if position >= level {
                return Err(Error::Parse {
                    position,
                    kind: ParseErrorKind::Length { expected: level, found: text.chars().count() },
                });
            }
            let digit = c
                .to_digit(8)
                .ok_or(Error::Parse { position, kind: ParseErrorKind::BadCopyDigit(c) })?;
            xs.push(XLetter(digit as u8));
        }
        if xs.len() + 1 != level {
            return Err(Error::Parse {
                position: xs.len() + 1,
                kind: ParseErrorKind::Length { expected: level, found: xs.len() + 1 },
            });
        }
        Ok(Word { y, xs })
    }

    #[inline]
    pub fn level(&self) -> usize {
        self.xs.len() + 1
    }

    #[inline]
    pub fn corner(&self) -> YLetter {
        self.y
    }

    #[inline]
    pub fn copies(&self) -> &[XLetter] {
        &self.xs
    }

    /// Copy index at 1-based scale position `i` (`x_i`).
    #[inline]
    pub fn x(&self, i: usize) -> XLetter {
        self.xs[i - 1]
    }

    /// The embedded lattice point `v_y + sum_i 3^(i-1) v_{x_i}`.
    pub fn point(&self) -> LatticePoint {
        let mut p = self.y.vector();
        let mut scale = 1;
        for x in &self.xs {
            let v = x.vector();
            p = p.offset(scale * v.x, scale * v.y);
            scale *= 3;
        }
        p
    }

    /// Lexicographic comparison of two words of the same level.
    pub fn compare(&self, other: &Word) -> Result<Ordering> {
        check_levels(self, other)?;
        Ok(self.cmp(other))
    }

    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::with_capacity(self.level());
        let _ = write!(s, "{self}");
        s
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use core::fmt::Write;
        f.write_char(self.y.as_char())?;
        for x in &self.xs {
            f.write_char((b'0' + x.0) as char)?;
        }
        Ok(())
    }
}

pub(crate) fn check_levels(w1: &Word, w2: &Word) -> Result<()> {
    if w1.level() != w2.level() {
        return Err(Error::LevelMismatch { left: w1.level(), right: w2.level() });
    }
    Ok(())
}

/// A distinct vertex: its canonical word together with its embedded point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub word: Word,
    pub point: LatticePoint,
}

/// The distinct vertices of the level-`n` carpet, each labelled by its
/// lexicographically smallest word.
///
/// Entries are sorted by point, so entry `i` is also vertex `i` of
/// [`crate::oracle::AdjacencyGraph`] at the same level.
#[derive(Debug, Clone)]
pub struct VertexTable {
    level: usize,
    entries: Vec<Vertex>,
    // dense (side+1)^2 grid, row-major by y, holding entry index + 1 (0 = absent)
    grid: Vec<u32>,
}

impl VertexTable {
    pub fn build(level: usize) -> Result<Self> {
        Self::build_with_cap(level, DEFAULT_WORD_LEVEL_CAP)
    }

    pub fn build_with_cap(level: usize, max_level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        if level > max_level {
            return Err(Error::LevelCap { level, max: max_level });
        }
        let side = carpet_side(level);
        let width = (side + 1) as usize;
        // Words are enumerated as integers whose base-8 digits (after the
        // corner letter) are x_1..x_{n-1} read left to right, so numeric order
        // is lexicographic order.
        let suffixes = 1usize << (3 * (level - 1));
        let mut best = alloc::vec![u64::MAX; width * width];
        let mut digits = alloc::vec![0u8; level - 1];
        for suffix in 0..suffixes {
            let mut rest = suffix;
            for d in digits.iter_mut().rev() {
                *d = (rest & 7) as u8;
                rest >>= 3;
            }
            let mut base = LatticePoint::ORIGIN;
            for (i, &d) in digits.iter().enumerate() {
                let v = X_VECTORS[d as usize];
                let s = pow3(i);
                base = base.offset(s * v.x, s * v.y);
            }
            for y in YLetter::ALL {
                let p = base.offset(y.vector().x, y.vector().y);
                let code = ((y.index() * suffixes) + suffix) as u64;
                let cell = &mut best[p.y as usize * width + p.x as usize];
                if code < *cell {
                    *cell = code;
                }
            }
        }

        let mut entries = Vec::new();
        let mut grid = alloc::vec![0u32; width * width];
        // sorted by point: x major, then y
        for x in 0..width {
            for y in 0..width {
                let code = best[y * width + x];
                if code == u64::MAX {
                    continue;
                }
                let code = code as usize;
                let corner = YLetter::ALL[code / suffixes];
                let mut rest = code % suffixes;
                let mut xs = alloc::vec![XLetter(0); level - 1];
                for slot in xs.iter_mut().rev() {
                    *slot = XLetter((rest & 7) as u8);
                    rest >>= 3;
                }
                entries.push(Vertex {
                    word: Word { y: corner, xs },
                    point: LatticePoint::new(x as i64, y as i64),
                });
                grid[y * width + x] = entries.len() as u32;
            }
        }
        Ok(VertexTable { level, entries, grid })
    }

    #[inline]
    pub fn level(&self) -> usize {
        self.level
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn vertices(&self) -> &[Vertex] {
        &self.entries
    }

    /// Index of the vertex at `p`, if `p` is a vertex.
    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        let side = carpet_side(self.level);
        if p.x < 0 || p.y < 0 || p.x > side || p.y > side {
            return None;
        }
        let width = (side + 1) as usize;
        match self.grid[p.y as usize * width + p.x as usize] {
            0 => None,
            i => Some(i as usize - 1),
        }
    }

    /// Canonical word of the vertex at `p`.
    pub fn canonical_at(&self, p: LatticePoint) -> Option<&Word> {
        self.index_of(p).map(|i| &self.entries[i].word)
    }

    /// Canonical representative of any word of this level.
    pub fn canonicalize(&self, w: &Word) -> Result<&Word> {
        if w.level() != self.level {
            return Err(Error::LevelMismatch { left: w.level(), right: self.level });
        }
        self.canonical_at(w.point())
            .ok_or(Error::Precondition("word does not embed onto a vertex"))
    }
}

/// Every word of the given level, in lexicographic order.
pub fn all_words(level: usize) -> impl Iterator<Item = Word> {
    let suffixes = 1usize << (3 * (level - 1));
    YLetter::ALL.into_iter().flat_map(move |y| {
        (0..suffixes).map(move |suffix| {
            let mut rest = suffix;
            let mut xs = alloc::vec![XLetter(0); level - 1];
            for slot in xs.iter_mut().rev() {
                *slot = XLetter((rest & 7) as u8);
                rest >>= 3;
            }
            Word { y, xs }
        })
    })
}
