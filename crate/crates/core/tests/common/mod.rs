//! High-precision reference evaluator shared by the integration tests.
//!
//! Everything here is computed from the textbook formulas in 256-bit
//! floating point (about 77 decimal digits), with no code shared with the
//! library under test beyond reading matrix entries.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use sector_det::ComplexMatrix;

pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone, Debug)]
pub struct Hp(pub BigFloat);

thread_local! {
    static CC: std::cell::RefCell<Consts> = std::cell::RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CC.with(|c| f(&mut c.borrow_mut()))
}

impl Hp {
    pub fn from_f64(x: f64) -> Hp {
        Hp(BigFloat::from_f64(x, PREC))
    }

    pub fn int(x: i64) -> Hp {
        Hp(BigFloat::from_i64(x, PREC))
    }

    pub fn zero() -> Hp {
        Hp::int(0)
    }

    pub fn one() -> Hp {
        Hp::int(1)
    }

    pub fn add(&self, o: &Hp) -> Hp {
        Hp(self.0.add(&o.0, PREC, RM))
    }

    pub fn sub(&self, o: &Hp) -> Hp {
        Hp(self.0.sub(&o.0, PREC, RM))
    }

    pub fn mul(&self, o: &Hp) -> Hp {
        Hp(self.0.mul(&o.0, PREC, RM))
    }

    pub fn div(&self, o: &Hp) -> Hp {
        Hp(self.0.div(&o.0, PREC, RM))
    }

    pub fn neg(&self) -> Hp {
        Hp(self.0.neg())
    }

    pub fn sqrt(&self) -> Hp {
        Hp(self.0.sqrt(PREC, RM))
    }

    pub fn ln(&self) -> Hp {
        with_cc(|cc| Hp(self.0.ln(PREC, RM, cc)))
    }

    pub fn exp(&self) -> Hp {
        with_cc(|cc| Hp(self.0.exp(PREC, RM, cc)))
    }

    pub fn cos(&self) -> Hp {
        with_cc(|cc| Hp(self.0.cos(PREC, RM, cc)))
    }

    /// `x^y` for `x >= 0`.
    pub fn powf(&self, y: &Hp) -> Hp {
        if self.is_zero() {
            return Hp::zero();
        }
        // Integer exponents go through powi; the rounding loop inside the
        // general pow can fail to terminate on exact results.
        if let Some(n) = y.small_int() {
            return self.powi(n);
        }
        y.mul(&self.ln()).exp()
    }

    fn small_int(&self) -> Option<usize> {
        let v = self.to_f64();
        ((0.0..=64.0).contains(&v) && v.fract() == 0.0 && Hp::from_f64(v).sub(self).is_zero())
            .then_some(v as usize)
    }

    pub fn powi(&self, n: usize) -> Hp {
        Hp(self.0.powi(n, PREC, RM))
    }

    /// Real positive `p`-th root.
    pub fn root(&self, p: usize) -> Hp {
        self.powf(&Hp::one().div(&Hp::int(p as i64)))
    }

    pub fn pi() -> Hp {
        with_cc(|cc| Hp(cc.pi(PREC, RM)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn abs(&self) -> Hp {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn gt(&self, o: &Hp) -> bool {
        self.0.cmp(&o.0).is_some_and(|c| c > 0)
    }

    pub fn max0(&self) -> Hp {
        if self.is_negative() {
            Hp::zero()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let s = format!("{}", self.0);
        s.parse()
            .unwrap_or_else(|e| panic!("cannot read back {s}: {e}"))
    }
}

#[derive(Clone, Debug)]
pub struct Cx {
    pub re: Hp,
    pub im: Hp,
}

impl Cx {
    pub fn new(re: Hp, im: Hp) -> Cx {
        Cx { re, im }
    }

    pub fn real(x: Hp) -> Cx {
        Cx {
            re: x,
            im: Hp::zero(),
        }
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        Cx::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn div(&self, o: &Cx) -> Cx {
        let d = o.norm_sqr();
        let num = self.mul(&Cx::new(o.re.clone(), o.im.neg()));
        Cx::new(num.re.div(&d), num.im.div(&d))
    }

    pub fn scale(&self, x: &Hp) -> Cx {
        Cx::new(self.re.mul(x), self.im.mul(x))
    }

    pub fn norm_sqr(&self) -> Hp {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Hp {
        self.norm_sqr().sqrt()
    }
}

/// Square matrix of high-precision complex entries.
#[derive(Clone, Debug)]
pub struct HpMat {
    pub n: usize,
    pub a: Vec<Vec<Cx>>,
}

impl HpMat {
    pub fn from_matrix(m: &ComplexMatrix) -> HpMat {
        let n = m.order();
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Cx::new(Hp::from_f64(m[(i, j)].re), Hp::from_f64(m[(i, j)].im)))
                    .collect()
            })
            .collect();
        HpMat { n, a }
    }

    pub fn leading(&self, k: usize) -> HpMat {
        HpMat {
            n: k,
            a: self.a[..k].iter().map(|r| r[..k].to_vec()).collect(),
        }
    }

    pub fn add(&self, o: &HpMat) -> HpMat {
        let a = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.a[i][j].add(&o.a[i][j])).collect())
            .collect();
        HpMat { n: self.n, a }
    }

    pub fn scale(&self, x: &Hp) -> HpMat {
        let a = self
            .a
            .iter()
            .map(|r| r.iter().map(|z| z.scale(x)).collect())
            .collect();
        HpMat { n: self.n, a }
    }

    /// `(A + A*)/2`.
    pub fn real_part(&self) -> HpMat {
        let half = Hp::one().div(&Hp::int(2));
        let a = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let x = &self.a[i][j];
                        let y = &self.a[j][i];
                        Cx::new(x.re.add(&y.re).mul(&half), x.im.sub(&y.im).mul(&half))
                    })
                    .collect()
            })
            .collect();
        HpMat { n: self.n, a }
    }

    /// `(A - A*)/(2i)`.
    pub fn imag_part(&self) -> HpMat {
        let half = Hp::one().div(&Hp::int(2));
        let a = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let x = &self.a[i][j];
                        let y = &self.a[j][i];
                        // (x - conj y) / (2i) = (Im x + Im y)/2 - i (Re x - Re y)/2
                        Cx::new(x.im.add(&y.im).mul(&half), x.re.sub(&y.re).mul(&half).neg())
                    })
                    .collect()
            })
            .collect();
        HpMat { n: self.n, a }
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Cx {
        let n = self.n;
        let mut a = self.a.clone();
        let mut det = Cx::real(Hp::one());
        for c in 0..n {
            let p = (c..n).fold(c, |best, r| {
                if a[r][c].norm_sqr().gt(&a[best][c].norm_sqr()) {
                    r
                } else {
                    best
                }
            });
            if a[p][c].norm_sqr().is_zero() {
                return Cx::real(Hp::zero());
            }
            if p != c {
                a.swap(p, c);
                det = Cx::new(det.re.neg(), det.im.neg());
            }
            det = det.mul(&a[c][c]);
            for r in c + 1..n {
                let f = a[r][c].div(&a[c][c]);
                for j in c..n {
                    let t = f.mul(&a[c][j]);
                    a[r][j] = a[r][j].sub(&t);
                }
            }
        }
        det
    }

    /// `|det A / det A_k|`, with `det A_0 = 1`.
    pub fn abs_ratio(&self, k: usize) -> Hp {
        self.det().abs().div(&self.leading(k).det().abs())
    }
}

pub fn sum(ms: &[HpMat]) -> HpMat {
    ms[1..].iter().fold(ms[0].clone(), |acc, m| acc.add(m))
}

pub fn hp_mats(ms: &[ComplexMatrix]) -> Vec<HpMat> {
    ms.iter().map(HpMat::from_matrix).collect()
}

/// `(|det ΣA / det ΣA_k| - (Σa)^{n-k})^{1/(n-k)}` against
/// `cos(α)^{n/(n-k)} Σ (|det A_i / det A_ik| - a_i^{n-k} / cos(α)^n)^{1/(n-k)}`,
/// negative brackets clamped to zero.
pub fn multi_sector(ms: &[ComplexMatrix], floors: &[f64], k: usize, alpha: f64) -> (f64, f64) {
    let hs = hp_mats(ms);
    let n = hs[0].n;
    let p = n - k;
    let c = Hp::from_f64(alpha).cos();
    let cn = c.powi(n);
    let a: Vec<Hp> = floors.iter().map(|&x| Hp::from_f64(x)).collect();
    let a_sum = a.iter().fold(Hp::zero(), |s, x| s.add(x));
    let lhs = sum(&hs).abs_ratio(k).sub(&a_sum.powi(p)).max0().root(p);
    let mut rhs = Hp::zero();
    for (h, ai) in hs.iter().zip(&a) {
        rhs = rhs.add(&h.abs_ratio(k).sub(&ai.powi(p).div(&cn)).max0().root(p));
    }
    let cr = cn.root(p);
    (lhs.to_f64(), cr.mul(&rhs).to_f64())
}

/// Liu's two-matrix bound: `(|ratio(A+B)| - cos(α)^k (a+b)^{n-k})^{1/(n-k)}`
/// against `cos(α)^{(n+k)/(n-k)} Σ (|ratio| - a^{n-k}/cos(α)^n)^{1/(n-k)}`.
pub fn liu(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    fa: f64,
    fb: f64,
    k: usize,
    alpha: f64,
) -> (f64, f64) {
    let hs = hp_mats(&[a.clone(), b.clone()]);
    let n = hs[0].n;
    let p = n - k;
    let c = Hp::from_f64(alpha).cos();
    let cn = c.powi(n);
    let (fa, fb) = (Hp::from_f64(fa), Hp::from_f64(fb));
    let lhs = sum(&hs)
        .abs_ratio(k)
        .sub(&c.powi(k).mul(&fa.add(&fb).powi(p)))
        .max0()
        .root(p);
    let ta = hs[0].abs_ratio(k).sub(&fa.powi(p).div(&cn)).max0().root(p);
    let tb = hs[1].abs_ratio(k).sub(&fb.powi(p).div(&cn)).max0().root(p);
    let cr = c.powi(n + k).root(p);
    (lhs.to_f64(), cr.mul(&ta.add(&tb)).to_f64())
}

/// `|det A|` against `sec(α)^n det Re A`, written as lhs >= rhs.
pub fn sector_reverse_det(a: &ComplexMatrix, alpha: f64) -> (f64, f64) {
    let h = HpMat::from_matrix(a);
    let c = Hp::from_f64(alpha).cos().powi(h.n);
    let re = h.real_part().det().re;
    (re.div(&c).to_f64(), h.det().abs().to_f64())
}

/// `|det A|` against `det Re A + |det Im A|`.
pub fn ostrowski_taussky_det(a: &ComplexMatrix) -> (f64, f64) {
    let h = HpMat::from_matrix(a);
    let re = h.real_part().det().re;
    let im = h.imag_part().det().abs();
    (h.det().abs().to_f64(), re.add(&im).to_f64())
}

/// Both sides of the scalar power-sum inequality, negative brackets clamped.
pub fn minkowski_complement(x: &[Vec<f64>], p: f64) -> (f64, f64) {
    let ph = Hp::from_f64(p);
    let inv = Hp::one().div(&ph);
    let pow = |v: &Hp| v.powf(&ph);
    let cols = x[0].len();
    let col_sum = |j: usize| x.iter().fold(Hp::zero(), |s, r| s.add(&Hp::from_f64(r[j])));
    let mut inner = pow(&col_sum(0));
    for j in 1..cols {
        inner = inner.sub(&pow(&col_sum(j)));
    }
    let lhs = inner.max0().powf(&inv);
    let mut rhs = Hp::zero();
    for row in x {
        let mut b = pow(&Hp::from_f64(row[0]));
        for v in &row[1..] {
            b = b.sub(&pow(&Hp::from_f64(*v)));
        }
        rhs = rhs.add(&b.max0().powf(&inv));
    }
    (lhs.to_f64(), rhs.to_f64())
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}
