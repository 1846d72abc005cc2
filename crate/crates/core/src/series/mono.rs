use std::fmt;
use std::ops::Add;

/// The five variables of a real-analytic series on `C³` restricted to `Im w = v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    Zeta,
    Zbar,
    Zetabar,
    U,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::Z, Var::Zeta, Var::Zbar, Var::Zetabar, Var::U];

    /// `(weighted degree, ζ-degree)` of the variable.
    pub fn weight_zdeg(self) -> (i32, i32) {
        match self {
            Var::Z | Var::Zbar => (1, 0),
            Var::Zeta | Var::Zetabar => (0, 1),
            Var::U => (2, 0),
        }
    }

    pub fn mono(self) -> Mono {
        match self {
            Var::Z => Mono::new(1, 0, 0, 0, 0),
            Var::Zeta => Mono::new(0, 1, 0, 0, 0),
            Var::Zbar => Mono::new(0, 0, 1, 0, 0),
            Var::Zetabar => Mono::new(0, 0, 0, 1, 0),
            Var::U => Mono::new(0, 0, 0, 0, 1),
        }
    }

    fn shift(self) -> u32 {
        match self {
            Var::Z => 32,
            Var::Zeta => 24,
            Var::Zbar => 16,
            Var::Zetabar => 8,
            Var::U => 0,
        }
    }
}

/// Exponent vector `z^k ζ^l z̄^α ζ̄^β u^m`, packed into one word.
///
/// The weighted degree `k + α + 2m` sits in the top byte so that the derived ordering
/// is the canonical one (weight first, then `k, l, α, β, m`), and multiplying two
/// monomials is a single integer addition. Every exponent must stay below 256.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(u64);

const W_SHIFT: u32 = 40;

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn new(k: u32, l: u32, alpha: u32, beta: u32, m: u32) -> Self {
        let w = k + alpha + 2 * m;
        assert!(w < 256 && l < 256 && beta < 256, "exponent overflow");
        Mono(
            (w as u64) << W_SHIFT
                | (k as u64) << 32
                | (l as u64) << 24
                | (alpha as u64) << 16
                | (beta as u64) << 8
                | m as u64,
        )
    }

    pub fn from_array(e: [u32; 5]) -> Self {
        Mono::new(e[0], e[1], e[2], e[3], e[4])
    }

    #[inline]
    fn byte(self, shift: u32) -> u32 {
        ((self.0 >> shift) & 0xff) as u32
    }

    #[inline]
    pub fn k(self) -> u32 {
        self.byte(32)
    }
    #[inline]
    pub fn l(self) -> u32 {
        self.byte(24)
    }
    #[inline]
    pub fn alpha(self) -> u32 {
        self.byte(16)
    }
    #[inline]
    pub fn beta(self) -> u32 {
        self.byte(8)
    }
    #[inline]
    pub fn m(self) -> u32 {
        self.byte(0)
    }

    /// Weighted degree `k + α + 2m`.
    #[inline]
    pub fn weight(self) -> u32 {
        self.byte(W_SHIFT)
    }

    /// ζ-degree `l + β`.
    #[inline]
    pub fn zdeg(self) -> u32 {
        self.l() + self.beta()
    }

    /// Standard degree: weight plus ζ-degree.
    pub fn std_degree(self) -> u32 {
        self.weight() + self.zdeg()
    }

    pub fn exps(self) -> [u32; 5] {
        [self.k(), self.l(), self.alpha(), self.beta(), self.m()]
    }

    pub fn exp(self, v: Var) -> u32 {
        self.byte(v.shift())
    }

    /// The monomial with the exponent of `v` lowered by one. The exponent must be positive.
    pub fn dec(self, v: Var) -> Mono {
        let [mut k, mut l, mut a, mut b, mut m] = self.exps();
        match v {
            Var::Z => k -= 1,
            Var::Zeta => l -= 1,
            Var::Zbar => a -= 1,
            Var::Zetabar => b -= 1,
            Var::U => m -= 1,
        }
        Mono::new(k, l, a, b, m)
    }

    /// Swap of holomorphic and antiholomorphic exponents.
    pub fn conj(self) -> Mono {
        Mono::new(self.alpha(), self.beta(), self.k(), self.l(), self.m())
    }

    /// The `(k, l, α, β)` part, i.e. the monomial with `m = 0`.
    pub fn slot(self) -> Mono {
        Mono::new(self.k(), self.l(), self.alpha(), self.beta(), 0)
    }

    pub fn is_holomorphic(self) -> bool {
        self.alpha() == 0 && self.beta() == 0
    }
}

impl Add for Mono {
    type Output = Mono;
    #[inline]
    fn add(self, rhs: Mono) -> Mono {
        Mono(self.0 + rhs.0)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [k, l, a, b, m] = self.exps();
        write!(f, "[{k}{l}{a}{b};{m}]")
    }
}
