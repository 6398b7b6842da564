//! Double-double arithmetic used internally by the reconstruction pipeline.
//!
//! The per-harmonic linear systems become severely ill-conditioned for
//! clustered node sets, so residual-level quantities are carried in roughly
//! 32 significant digits. Only the crate-internal numeric kernels use this
//! type; all public interfaces stay in `f64`.

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b| or a == 0
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// pi to double-double precision.
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let (s, e) = two_sum(self.hi, x);
        let e = e + self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        self.div(Dd::from_f64(x))
    }

    /// Square root via one Newton correction of the f64 estimate.
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let x = self.hi.sqrt();
        let xd = Dd::from_f64(x);
        let r = self.sub(xd.mul(xd));
        xd.add_f64(r.hi / (2.0 * x))
    }
}

/// `cos(pi * num / den)` with the angle formed in double-double precision.
///
/// `num` may be any integer; `den > 0`. The residual angle error is corrected
/// through the first derivative, so the result is accurate to roughly one ulp
/// of the standard library's `cos` on a fully accurate argument.
pub(crate) fn cos_pi_frac(num: i64, den: i64) -> Dd {
    debug_assert!(den > 0);
    let num = num.rem_euclid(2 * den);
    let theta = Dd::PI.mul_f64(num as f64).div_f64(den as f64);
    let a = theta.to_f64();
    let e = theta.sub(Dd::from_f64(a)).to_f64();
    Dd::from_f64(a.cos()).add_f64(-a.sin() * e)
}

/// `sin(pi * num / den)`, same accuracy contract as [`cos_pi_frac`].
pub(crate) fn sin_pi_frac(num: i64, den: i64) -> Dd {
    debug_assert!(den > 0);
    let num = num.rem_euclid(2 * den);
    let theta = Dd::PI.mul_f64(num as f64).div_f64(den as f64);
    let a = theta.to_f64();
    let e = theta.sub(Dd::from_f64(a)).to_f64();
    Dd::from_f64(a.sin()).add_f64(a.cos() * e)
}
