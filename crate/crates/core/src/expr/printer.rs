use num_complex::Complex64;

use super::Expr;

// Binding strength of each node kind, higher binds tighter.
const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => ADD,
        Expr::Mul(..) | Expr::Div(..) => MUL,
        Expr::Neg(_) => NEG,
        Expr::Pow(..) => POW,
        Expr::Const(c) if c.im == 0.0 && c.re >= 0.0 => ATOM,
        Expr::Const(c) if c.re == 0.0 && c.im == 1.0 => ATOM,
        Expr::Const(_) => ADD,
        _ => ATOM,
    }
}

fn real(x: f64) -> String {
    // `{:?}` is the shortest representation that round-trips.
    let s = format!("{x:?}");
    s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
}

fn constant(c: Complex64) -> String {
    if c.im == 0.0 {
        return real(c.re);
    }
    let imag = if c.im == 1.0 {
        "i".to_string()
    } else if c.im == -1.0 {
        "-i".to_string()
    } else {
        format!("{}*i", real(c.im))
    };
    if c.re == 0.0 {
        imag
    } else if c.im < 0.0 {
        format!("{}-{}", real(c.re), imag.trim_start_matches('-'))
    } else {
        format!("{}+{}", real(c.re), imag)
    }
}

fn wrap(e: &Expr, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write(e, out);
        out.push(')');
    } else {
        write(e, out);
    }
}

fn write(e: &Expr, out: &mut String) {
    match e {
        Expr::Const(c) => out.push_str(&constant(*c)),
        Expr::Var => out.push('z'),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            wrap(a, prec(a) < ADD, out);
            out.push(if matches!(e, Expr::Add(..)) { '+' } else { '-' });
            wrap(b, prec(b) <= ADD, out);
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            wrap(a, prec(a) < MUL, out);
            out.push(if matches!(e, Expr::Mul(..)) { '*' } else { '/' });
            wrap(b, prec(b) <= MUL, out);
        }
        Expr::Neg(a) => {
            out.push('-');
            wrap(a, prec(a) < NEG, out);
        }
        Expr::Pow(a, b) => {
            wrap(a, prec(a) < ATOM, out);
            out.push('^');
            wrap(b, prec(b) < NEG, out);
        }
        Expr::Call(f, a) => {
            out.push_str(f.name());
            out.push('(');
            write(a, out);
            out.push(')');
        }
    }
}

/// Canonical text form; parsing it yields the same tree for any parsed input.
pub fn print(e: &Expr) -> String {
    let mut out = String::new();
    write(e, &mut out);
    out
}
