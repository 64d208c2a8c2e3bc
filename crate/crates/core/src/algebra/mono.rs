use std::fmt;

/// Monomial z1^a1 z2^a2 Z1^b1 Z2^b2 w^cw W^cwb u^cu, where capitals denote
/// complex conjugates and `u` is the real variable Re w.
///
/// The derived ordering is lexicographic on the fields in declaration order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub a1: u32,
    pub a2: u32,
    pub b1: u32,
    pub b2: u32,
    pub cw: u32,
    pub cwb: u32,
    pub cu: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { a1: 0, a2: 0, b1: 0, b2: 0, cw: 0, cwb: 0, cu: 0 };

    pub fn z(a1: u32, a2: u32) -> Self {
        Mono { a1, a2, ..Self::ONE }
    }

    pub fn zz(a1: u32, a2: u32, b1: u32, b2: u32) -> Self {
        Mono { a1, a2, b1, b2, ..Self::ONE }
    }

    pub fn holo(a1: u32, a2: u32, cw: u32) -> Self {
        Mono { a1, a2, cw, ..Self::ONE }
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono {
            a1: self.a1 + o.a1,
            a2: self.a2 + o.a2,
            b1: self.b1 + o.b1,
            b2: self.b2 + o.b2,
            cw: self.cw + o.cw,
            cwb: self.cwb + o.cwb,
            cu: self.cu + o.cu,
        }
    }

    pub fn conj(&self) -> Mono {
        Mono {
            a1: self.b1,
            a2: self.b2,
            b1: self.a1,
            b2: self.a2,
            cw: self.cwb,
            cwb: self.cw,
            cu: self.cu,
        }
    }

    /// True when only z1, z2, w appear.
    pub fn is_holomorphic(&self) -> bool {
        self.b1 == 0 && self.b2 == 0 && self.cwb == 0 && self.cu == 0
    }

    /// Contains both holomorphic and antiholomorphic variables.
    pub fn is_mixed(&self) -> bool {
        (self.a1 + self.a2 + self.cw > 0) && (self.b1 + self.b2 + self.cwb > 0)
    }

    pub fn has_w(&self) -> bool {
        self.cw > 0 || self.cwb > 0 || self.cu > 0
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let vars = [
            ("z1", self.a1),
            ("z2", self.a2),
            ("Z1", self.b1),
            ("Z2", self.b2),
            ("w", self.cw),
            ("W", self.cwb),
            ("u", self.cu),
        ];
        let mut first = true;
        for (name, e) in vars {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}
