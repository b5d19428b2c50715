//! Exact arithmetic in the infinite dihedral group and its Z-extension.
//!
//! The dihedral group is generated by S and e with e^2 = 1, eSe = S^-1;
//! every element has the unique normal form S^m e^eps, stored as the pair
//! (shift, flip). The extension G has underlying set Z^2 with the semidirect
//! multiplication (m, n)(p, q) = (m + (-1)^n p, n + q).

use std::fmt;

/// Element S^m e^eps of the infinite dihedral group, in normal form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub shift: i64,
    pub flip: bool,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement {
        shift: 0,
        flip: false,
    };

    /// The generator S.
    pub const S: DihedralElement = DihedralElement {
        shift: 1,
        flip: false,
    };

    /// The involutive generator e.
    pub const E: DihedralElement = DihedralElement {
        shift: 0,
        flip: true,
    };

    pub fn new(shift: i64, flip: bool) -> Self {
        DihedralElement { shift, flip }
    }

    /// S^m.
    pub fn s_pow(m: i64) -> Self {
        DihedralElement {
            shift: m,
            flip: false,
        }
    }

    /// S^m e.
    pub fn s_pow_e(m: i64) -> Self {
        DihedralElement {
            shift: m,
            flip: true,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Debug for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.shift, self.flip) {
            (0, false) => write!(f, "1"),
            (m, false) => write!(f, "S^{}", m),
            (0, true) => write!(f, "e"),
            (m, true) => write!(f, "S^{}e", m),
        }
    }
}

/// (S^m e^eps)(S^n e^delta) = S^(m + (-1)^eps n) e^(eps xor delta).
pub fn dmul(g: DihedralElement, h: DihedralElement) -> DihedralElement {
    let n = if g.flip { -h.shift } else { h.shift };
    DihedralElement {
        shift: g.shift + n,
        flip: g.flip ^ h.flip,
    }
}

pub fn dinv(g: DihedralElement) -> DihedralElement {
    if g.flip {
        // reflections are involutions: (S^m e)^2 = 1
        g
    } else {
        DihedralElement::s_pow(-g.shift)
    }
}

/// L(S^m) = |m|, L(S^m e) = |m| + 1.
pub fn word_length(g: DihedralElement) -> u64 {
    g.shift.unsigned_abs() + u64::from(g.flip)
}

/// All dihedral elements of word length <= bound.
pub fn dihedral_ball(bound: u64) -> Vec<DihedralElement> {
    let b = bound as i64;
    let mut out = Vec::new();
    for m in -b..=b {
        out.push(DihedralElement::s_pow(m));
    }
    if bound >= 1 {
        for m in -(b - 1)..=(b - 1) {
            out.push(DihedralElement::s_pow_e(m));
        }
    }
    out
}

/// Bounded conjugacy search: true iff k g k^-1 = h for some conjugator of
/// word length <= radius. A `false` only means "not found within radius".
pub fn are_conjugate_bounded(g: DihedralElement, h: DihedralElement, radius: u64) -> bool {
    dihedral_ball(radius)
        .into_iter()
        .any(|k| dmul(dmul(k, g), dinv(k)) == h)
}

/// Element U^a V^b of the group G = Z x_sigma Z, underlying set Z^2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElement {
    pub a: i64,
    pub b: i64,
}

impl GElement {
    pub const IDENTITY: GElement = GElement { a: 0, b: 0 };

    /// The generator U = (1, 0).
    pub const U: GElement = GElement { a: 1, b: 0 };

    /// The generator V = (0, 1).
    pub const V: GElement = GElement { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        GElement { a, b }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Central elements are exactly (0, 2n).
    pub fn is_central(&self) -> bool {
        self.a == 0 && self.b % 2 == 0
    }
}

impl fmt::Debug for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// (m, n)(p, q) = (m + (-1)^n p, n + q).
pub fn gmul(g: GElement, h: GElement) -> GElement {
    let p = if g.b.rem_euclid(2) == 1 { -h.a } else { h.a };
    GElement {
        a: g.a + p,
        b: g.b + h.b,
    }
}

pub fn ginv(g: GElement) -> GElement {
    let a = if g.b.rem_euclid(2) == 1 { g.a } else { -g.a };
    GElement { a, b: -g.b }
}

/// Quotient homomorphism q(m, n) = S^m e^(n mod 2).
pub fn quotient_q(g: GElement) -> DihedralElement {
    DihedralElement {
        shift: g.a,
        flip: g.b.rem_euclid(2) == 1,
    }
}
