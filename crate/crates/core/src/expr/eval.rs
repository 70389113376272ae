use std::fmt;

use num_complex::Complex64;

use super::{Expr, Func};
use crate::jet::{Jet, JetError};

/// A jet failure together with the location of the failing node.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub kind: JetError,
    /// Child indices from the root, `/`-separated (`/` is the root itself).
    pub path: String,
    /// Canonical text of the failing subexpression.
    pub subexpr: String,
    pub at: Complex64,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in `{}` (node {}) at z = {}",
            self.kind, self.subexpr, self.path, self.at
        )
    }
}

impl std::error::Error for EvalError {}

struct Ctx {
    z0: Complex64,
    path: Vec<u8>,
}

impl Ctx {
    fn fail(&self, e: &Expr, kind: JetError) -> EvalError {
        let path = if self.path.is_empty() {
            "/".to_string()
        } else {
            self.path.iter().map(|i| format!("/{i}")).collect()
        };
        EvalError {
            kind,
            path,
            subexpr: e.to_string(),
            at: self.z0,
        }
    }

    fn child(&mut self, idx: u8, e: &Expr, order: usize) -> Result<Jet, EvalError> {
        self.path.push(idx);
        let out = self.go(e, order);
        self.path.pop();
        out
    }

    fn go(&mut self, e: &Expr, order: usize) -> Result<Jet, EvalError> {
        let z0 = self.z0;
        let res = match e {
            Expr::Const(c) => Ok(Jet::constant(z0, *c, order)),
            Expr::Var => Ok(Jet::variable(z0, order)),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let x = self.child(0, a, order)?;
                let y = self.child(1, b, order)?;
                match e {
                    Expr::Add(..) => x.try_add(&y),
                    Expr::Sub(..) => x.try_sub(&y),
                    Expr::Mul(..) => x.try_mul(&y),
                    _ => x.try_div(&y),
                }
            }
            Expr::Pow(a, b) => {
                let base = self.child(0, a, order)?;
                if let Some(n) = b.integer_exponent() {
                    base.powi(n)
                } else if b.is_constant() {
                    let ex = self.child(1, b, 0)?.value();
                    base.powc(ex)
                } else {
                    let ex = self.child(1, b, order)?;
                    base.powj(&ex)
                }
            }
            Expr::Neg(a) => Ok(self.child(0, a, order)?.neg()),
            Expr::Call(Func::Deriv, a) => Ok(self.child(0, a, order + 1)?.differentiate()),
            Expr::Call(Func::Builtin(b), a) => {
                let inner = self.child(0, a, order)?;
                let outer = eval_jet(b.expr(), inner.value(), order).map_err(|mut err| {
                    err.path = format!("{}{}", self.fail(e, err.kind.clone()).path, err.path);
                    err.at = z0;
                    err
                })?;
                Jet::compose(&outer, &inner)
            }
            Expr::Call(f, a) => {
                let x = self.child(0, a, order)?;
                match f {
                    Func::Log => x.ln(),
                    Func::Exp => x.exp(),
                    Func::Sqrt => x.sqrt(),
                    Func::Deriv | Func::Builtin(_) => unreachable!("handled above"),
                }
            }
        };
        let jet = res.map_err(|k| self.fail(e, k))?;
        if jet.coeffs().iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(self.fail(e, JetError::NonFinite));
        }
        Ok(jet)
    }
}

/// Jet of `e` at `z0` through `order`, by structural recursion.
///
/// Integer-constant exponents use exact repeated multiplication, other
/// exponents the principal branch `exp(e·log(base))`.
pub fn eval_jet(e: &Expr, z0: Complex64, order: usize) -> Result<Jet, EvalError> {
    let mut ctx = Ctx {
        z0,
        path: Vec::new(),
    };
    ctx.go(e, order)
}
