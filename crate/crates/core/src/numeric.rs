//! Small numerical building blocks: compensated summation, composite and
//! adaptive Simpson quadrature, a fixed Gauss–Legendre rule, and serde
//! helpers for complex values stored as `[re, im]` pairs.

use num_complex::Complex64;

/// Neumaier-compensated accumulator for long f64 sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated accumulator for complex sums (one accumulator per component).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sum an iterator of f64 with compensation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for x in iter {
        acc.add(x);
    }
    acc.value()
}

/// Composite Simpson rule over `n` uniformly spaced samples `f(0..n)` with
/// step `dx`. An odd interval count is finished with a 3/8 panel so no sample
/// is dropped; two samples fall back to the trapezoid.
pub fn simpson<F: Fn(usize) -> f64>(n: usize, dx: f64, f: F) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * dx * (f(0) + f(1));
    }
    let intervals = n - 1;
    let simpson_end = if intervals.is_multiple_of(2) { n - 1 } else { n - 4 };
    let mut acc = CompensatedSum::new();
    if simpson_end > 0 {
        acc.add(f(0));
        acc.add(f(simpson_end));
        let mut i = 1;
        while i < simpson_end {
            acc.add(4.0 * f(i));
            if i + 1 < simpson_end {
                acc.add(2.0 * f(i + 1));
            }
            i += 2;
        }
    }
    let mut total = acc.value() * dx / 3.0;
    if !intervals.is_multiple_of(2) {
        let m = simpson_end;
        total += 3.0 * dx / 8.0 * (f(m) + 3.0 * f(m + 1) + 3.0 * f(m + 2) + f(m + 3));
    }
    total
}

/// Complex-valued composite Simpson over uniform samples.
pub fn simpson_complex<F: Fn(usize) -> Complex64>(n: usize, dx: f64, f: F) -> Complex64 {
    let re = simpson(n, dx, |i| f(i).re);
    let im = simpson(n, dx, |i| f(i).im);
    Complex64::new(re, im)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`. Intended for smooth, rapidly decaying integrands.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = panel(f, a, fa, m, fm);
        let (rm, frm, right) = panel(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
        }
    }
    // Seed with fixed panels so integrands that vanish at coarse probe
    // points (odd functions, bump tails) cannot fake early convergence.
    const SEED_PANELS: usize = 16;
    let mut acc = CompensatedSum::new();
    let h = (b - a) / SEED_PANELS as f64;
    for i in 0..SEED_PANELS {
        let lo = a + i as f64 * h;
        let hi = lo + h;
        let flo = f(lo);
        let fhi = f(hi);
        let (m, fm, whole) = panel(f, lo, flo, hi, fhi);
        acc.add(recurse(
            f,
            lo,
            flo,
            hi,
            fhi,
            m,
            fm,
            whole,
            tol / SEED_PANELS as f64,
            48,
        ));
    }
    acc.value()
}

/// 7-point Gauss–Legendre quadrature of `f` over `[a, b]`; exact for
/// polynomials up to degree 13.
pub fn gauss_legendre_7<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    const NODES: [f64; 7] = [
        -0.9491079123427585,
        -0.7415311855993945,
        -0.4058451513773972,
        0.0,
        0.4058451513773972,
        0.7415311855993945,
        0.9491079123427585,
    ];
    const WEIGHTS: [f64; 7] = [
        0.1294849661688697,
        0.2797053914892766,
        0.3818300505051189,
        0.4179591836734694,
        0.3818300505051189,
        0.2797053914892766,
        0.1294849661688697,
    ];
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::new();
    for (x, w) in NODES.iter().zip(WEIGHTS.iter()) {
        acc.add(w * f(mid + half * x));
    }
    half * acc.value()
}

/// Serialize `Vec<Complex64>` as `[[re, im], ...]`.
pub mod complex_pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }
}

/// Serialize a single `Complex64` as `[re, im]`.
pub mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let p: [f64; 2] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(p[0], p[1]))
    }
}
