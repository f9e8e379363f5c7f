//! Truncated Taylor series in a complex coefficient ring.

use num_complex::Complex64;

/// `sum_n c[n] t^n` about some base point; `c[n] = f^{(n)}(x0) / n!`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub x0: f64,
    pub c: Vec<Complex64>,
}

impl Jet {
    pub fn zero(x0: f64, order: usize) -> Self {
        Self {
            x0,
            c: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    /// `n`-th derivative at the base point.
    pub fn derivative(&self, n: usize) -> Complex64 {
        let mut fact = 1.0;
        for j in 2..=n {
            fact *= j as f64;
        }
        self.c.get(n).copied().unwrap_or_default() * fact
    }

    /// `exp` of a jet by the recurrence `n e_n = sum_j j g_j e_{n-j}`.
    pub fn exp(&self) -> Self {
        let n = self.c.len();
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.c[j] * e[k - j] * j as f64;
            }
            e[k] = acc / k as f64;
        }
        Self { x0: self.x0, c: e }
    }

    pub fn scale(mut self, s: Complex64) -> Self {
        for v in &mut self.c {
            *v *= s;
        }
        self
    }

    /// Multiplication by `x`.
    pub fn times_x(&self) -> Self {
        let mut out = Self::zero(self.x0, self.order());
        for n in 0..=self.order() {
            out.c[n] = self.c[n] * self.x0 + if n > 0 { self.c[n - 1] } else { Complex64::default() };
        }
        out
    }

    /// Derivative, losing one order.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.x0, 0);
        }
        let c = (1..=self.order()).map(|n| self.c[n] * n as f64).collect();
        Self { x0: self.x0, c }
    }
}
