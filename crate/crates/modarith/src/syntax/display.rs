//! Printing of terms and propositions.  Output is valid input for the parser
//! and uses minimal parentheses: `=>` is right-associative and binds loosest,
//! then `\/`, then `/\`; among term operators `->` binds loosest (right-
//! associative), then `+`, then `*`.  Numerals print in decimal.

use super::{Prop, Term, ARROW, EQ, MEM, PLUS, TIMES};
use std::fmt;

// Proposition precedence levels.
const P_QUANT: u8 = 0;
const P_IMPLIES: u8 = 1;
const P_OR: u8 = 2;
const P_AND: u8 = 3;

// Term precedence levels.
const T_ARROW: u8 = 1;
const T_PLUS: u8 = 2;
const T_TIMES: u8 = 3;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, 0)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
    if let Some(n) = t.as_numeral() {
        return write!(f, "{n}");
    }
    match t {
        Term::Var(v) => write!(f, "{}", v.name),
        Term::App(op, args) if op == ARROW && args.len() == 2 => {
            parenthesize(f, T_ARROW < min, |f| {
                write_term(f, &args[0], T_ARROW + 1)?;
                write!(f, " -> ")?;
                write_term(f, &args[1], T_ARROW)
            })
        }
        Term::App(op, args) if op == PLUS && args.len() == 2 => {
            parenthesize(f, T_PLUS < min, |f| {
                write_term(f, &args[0], T_PLUS)?;
                write!(f, " + ")?;
                write_term(f, &args[1], T_PLUS + 1)
            })
        }
        Term::App(op, args) if op == TIMES && args.len() == 2 => {
            parenthesize(f, T_TIMES < min, |f| {
                write_term(f, &args[0], T_TIMES)?;
                write!(f, " * ")?;
                write_term(f, &args[1], T_TIMES + 1)
            })
        }
        Term::App(name, args) => {
            if args.is_empty() {
                write!(f, "{name}")
            } else {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write_term(f, a, 0)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prop(f, self, 0)
    }
}

fn write_prop(f: &mut fmt::Formatter<'_>, p: &Prop, min: u8) -> fmt::Result {
    match p {
        Prop::Atom(name, args) if name == EQ && args.len() == 2 => {
            write_term(f, &args[0], T_ARROW)?;
            write!(f, " = ")?;
            write_term(f, &args[1], T_ARROW)
        }
        Prop::Atom(name, args) if name == MEM && args.len() == 2 => {
            write_term(f, &args[0], T_ARROW)?;
            write!(f, " in ")?;
            write_term(f, &args[1], T_ARROW)
        }
        Prop::Atom(name, args) => {
            if args.is_empty() {
                write!(f, "{name}")
            } else {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write_term(f, a, 0)?;
                }
                write!(f, ")")
            }
        }
        Prop::Top => write!(f, "true"),
        Prop::Bottom => write!(f, "false"),
        Prop::Implies(a, b) => parenthesize(f, P_IMPLIES < min, |f| {
            write_prop(f, a, P_IMPLIES + 1)?;
            write!(f, " => ")?;
            write_prop(f, b, P_IMPLIES)
        }),
        Prop::Or(a, b) => parenthesize(f, P_OR < min, |f| {
            write_prop(f, a, P_OR)?;
            write!(f, " \\/ ")?;
            write_prop(f, b, P_OR + 1)
        }),
        Prop::And(a, b) => parenthesize(f, P_AND < min, |f| {
            write_prop(f, a, P_AND)?;
            write!(f, " /\\ ")?;
            write_prop(f, b, P_AND + 1)
        }),
        Prop::ForAll(v, body) => parenthesize(f, P_QUANT < min, |f| {
            write!(f, "forall {}:{}. ", v.name, v.sort.0)?;
            write_prop(f, body, P_QUANT)
        }),
        Prop::Exists(v, body) => parenthesize(f, P_QUANT < min, |f| {
            write!(f, "exists {}:{}. ", v.name, v.sort.0)?;
            write_prop(f, body, P_QUANT)
        }),
    }
}

fn parenthesize(
    f: &mut fmt::Formatter<'_>,
    needed: bool,
    inner: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if needed {
        write!(f, "(")?;
        inner(f)?;
        write!(f, ")")
    } else {
        inner(f)
    }
}
