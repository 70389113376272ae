//! Expressions in one complex variable `z`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?            // right-associative
//! atom   := number | 'i' | 'z' | ident '(' expr ')' | '(' expr ')'
//! number := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
//! ident  := log | exp | sqrt | deriv | k | l | s | q2
//! ```
//!
//! Unary minus binds looser than `^`, so `-z^2` is `-(z^2)`. There is no
//! implicit multiplication.

mod eval;
mod parser;
mod printer;

pub use eval::{eval_jet, EvalError};
pub use parser::{parse, ParseError};

use num_complex::Complex64;

/// Built-in analytic maps, each defined by a closed-form expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Koebe function `z/(1-z)^2`.
    K,
    /// Half-plane map `z/(1-z)`.
    L,
    /// Strip map `½·log((1+z)/(1-z))`.
    S,
    /// `z/(1-z^2)`.
    Q2,
}

impl Builtin {
    pub const ALL: [Builtin; 4] = [Builtin::K, Builtin::L, Builtin::S, Builtin::Q2];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::K => "k",
            Builtin::L => "l",
            Builtin::S => "s",
            Builtin::Q2 => "q2",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn closed_form(self) -> &'static str {
        match self {
            Builtin::K => "z/(1-z)^2",
            Builtin::L => "z/(1-z)",
            Builtin::S => "0.5*log((1+z)/(1-z))",
            Builtin::Q2 => "z/(1-z^2)",
        }
    }

    pub(crate) fn expr(self) -> &'static Expr {
        use std::sync::OnceLock;
        static CACHE: [OnceLock<Expr>; 4] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        let idx = self as usize;
        CACHE[idx].get_or_init(|| parse(self.closed_form()).expect("builtin closed form parses"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Log,
    Exp,
    Sqrt,
    /// Derivative with respect to `z`, evaluated on jets one order higher.
    Deriv,
    Builtin(Builtin),
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Log => "log",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Deriv => "deriv",
            Func::Builtin(b) => b.name(),
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "log" => Some(Func::Log),
            "exp" => Some(Func::Exp),
            "sqrt" => Some(Func::Sqrt),
            "deriv" => Some(Func::Deriv),
            other => Builtin::from_name(other).map(Func::Builtin),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn constant(c: Complex64) -> Expr {
        Expr::Const(c)
    }

    pub fn real(x: f64) -> Expr {
        Expr::Const(Complex64::new(x, 0.0))
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::Call(f, Box::new(a))
    }

    /// `c·e`, skipping the multiplication when `c = 1`.
    pub fn scaled(c: Complex64, e: Expr) -> Expr {
        if c == Complex64::new(1.0, 0.0) {
            e
        } else {
            Expr::mul(Expr::Const(c), e)
        }
    }

    pub fn is_zero_const(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == Complex64::new(0.0, 0.0))
    }

    /// True when the tree does not mention `z`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var => false,
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.is_constant() && b.is_constant(),
            Expr::Neg(a) => a.is_constant(),
            Expr::Call(Func::Deriv, _) => true,
            Expr::Call(_, a) => a.is_constant(),
        }
    }

    /// Integer value of a constant exponent such as `3` or `-2`, if any.
    pub(crate) fn integer_exponent(&self) -> Option<i64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Neg(inner) => match inner.as_ref() {
                Expr::Const(c) => -*c,
                _ => return None,
            },
            _ => return None,
        };
        if v.im == 0.0 && v.re.fract() == 0.0 && v.re.abs() <= 1024.0 {
            Some(v.re as i64)
        } else {
            None
        }
    }

    /// The expression `self ∘ inner`, i.e. `z` replaced by `inner`.
    ///
    /// A `deriv(e)` node becomes `deriv(e ∘ inner) / deriv(inner)` so that
    /// the result still denotes `e′ ∘ inner`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var => inner.clone(),
            Expr::Add(a, b) => Expr::add(a.substitute(inner), b.substitute(inner)),
            Expr::Sub(a, b) => Expr::sub(a.substitute(inner), b.substitute(inner)),
            Expr::Mul(a, b) => Expr::mul(a.substitute(inner), b.substitute(inner)),
            Expr::Div(a, b) => Expr::div(a.substitute(inner), b.substitute(inner)),
            Expr::Pow(a, b) => Expr::pow(a.substitute(inner), b.substitute(inner)),
            Expr::Neg(a) => Expr::neg(a.substitute(inner)),
            Expr::Call(Func::Deriv, a) => Expr::div(
                Expr::call(Func::Deriv, a.substitute(inner)),
                Expr::call(Func::Deriv, inner.clone()),
            ),
            Expr::Call(f, a) => Expr::call(*f, a.substitute(inner)),
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&printer::print(self))
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
