use core::fmt;

/// A point of the integer lattice `Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    #[inline]
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    #[inline]
    pub const fn offset(self, dx: i64, dy: i64) -> Self {
        LatticePoint { x: self.x + dx, y: self.y + dy }
    }

    /// Mirror image across the vertical axis of a square of the given side.
    #[inline]
    pub const fn reflect(self, side: i64) -> Self {
        LatticePoint { x: side - self.x, y: self.y }
    }

    /// Quarter turn inside a square of the given side: `(x, y) -> (y, side - x)`.
    #[inline]
    pub const fn rotate(self, side: i64) -> Self {
        LatticePoint { x: self.y, y: side - self.x }
    }

    /// The eight images of the point under the dihedral group of the square.
    pub fn d4_orbit(self, side: i64) -> [LatticePoint; 8] {
        let mut out = [self; 8];
        let mut p = self;
        for i in 0..4 {
            out[2 * i] = p;
            out[2 * i + 1] = p.reflect(side);
            p = p.rotate(side);
        }
        out
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Manhattan distance, the geodesic distance of the unobstructed grid.
#[inline]
pub fn l1(p: LatticePoint, q: LatticePoint) -> u64 {
    p.x.abs_diff(q.x) + p.y.abs_diff(q.y)
}

/// `3^k`.
#[inline]
pub const fn pow3(k: usize) -> i64 {
    let mut v = 1i64;
    let mut i = 0;
    while i < k {
        v *= 3;
        i += 1;
    }
    v
}

/// Side length of the level-`n` carpet graph, `3^(n-1)`.
#[inline]
pub const fn carpet_side(level: usize) -> i64 {
    pow3(level - 1)
}
