use num_complex::Complex64;

use crate::expr::{eval_jet, parse, Builtin, Expr, Func};
use crate::jet::Jet;
use crate::Error;

/// An analytic function of `z` described by an expression tree.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticFunction {
    expr: Expr,
    /// Free-text note about where evaluation is expected to fail.
    pub domain_note: Option<String>,
}

impl AnalyticFunction {
    pub fn new(expr: Expr) -> Self {
        AnalyticFunction {
            expr,
            domain_note: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        Ok(Self::new(parse(text)?))
    }

    pub fn builtin(b: Builtin) -> Self {
        let note = match b {
            Builtin::K | Builtin::L => "pole at z = 1",
            Builtin::S | Builtin::Q2 => "singular at z = ±1",
        };
        AnalyticFunction {
            expr: Expr::call(Func::Builtin(b), Expr::Var),
            domain_note: Some(note.to_string()),
        }
    }

    pub fn identity() -> Self {
        Self::new(Expr::Var)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(Expr::Const(c))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.domain_note = Some(note.into());
        self
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn jet(&self, z0: Complex64, order: usize) -> Result<Jet, Error> {
        if !(z0.re.is_finite() && z0.im.is_finite()) {
            return Err(Error::NonFinite { at: z0 });
        }
        Ok(eval_jet(&self.expr, z0, order)?)
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64, Error> {
        Ok(self.jet(z, 0)?.value())
    }

    pub fn derivative(&self) -> AnalyticFunction {
        Self::new(Expr::call(Func::Deriv, self.expr.clone()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AnalyticFunction) -> AnalyticFunction {
        Self::new(self.expr.substitute(&inner.expr))
    }

    pub fn scale(&self, c: Complex64) -> AnalyticFunction {
        Self::new(Expr::scaled(c, self.expr.clone()))
    }

    pub fn add(&self, other: &AnalyticFunction) -> AnalyticFunction {
        Self::new(Expr::add(self.expr.clone(), other.expr.clone()))
    }

    pub fn mul(&self, other: &AnalyticFunction) -> AnalyticFunction {
        Self::new(Expr::mul(self.expr.clone(), other.expr.clone()))
    }

    pub fn div(&self, other: &AnalyticFunction) -> AnalyticFunction {
        Self::new(Expr::div(self.expr.clone(), other.expr.clone()))
    }

    /// `a·self + b·other + c`, dropping zero terms.
    pub fn linear(
        a: Complex64,
        f: &AnalyticFunction,
        b: Complex64,
        g: &AnalyticFunction,
        c: Complex64,
    ) -> AnalyticFunction {
        let zero = Complex64::new(0.0, 0.0);
        let mut terms = Vec::new();
        if a != zero {
            terms.push(Expr::scaled(a, f.expr.clone()));
        }
        if b != zero {
            terms.push(Expr::scaled(b, g.expr.clone()));
        }
        if c != zero || terms.is_empty() {
            terms.push(Expr::Const(c));
        }
        let mut it = terms.into_iter();
        let first = it.next().expect("at least one term");
        Self::new(it.fold(first, Expr::add))
    }
}

impl std::fmt::Display for AnalyticFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.expr)
    }
}

impl From<Expr> for AnalyticFunction {
    fn from(expr: Expr) -> Self {
        Self::new(expr)
    }
}

/// The disk automorphism `(a+z)/(1+conj(a)z)` as an expression.
pub fn disk_automorphism(a: Complex64) -> AnalyticFunction {
    AnalyticFunction::new(Expr::div(
        Expr::add(Expr::Const(a), Expr::Var),
        Expr::add(
            Expr::real(1.0),
            Expr::mul(Expr::Const(a.conj()), Expr::Var),
        ),
    ))
}
