use std::fmt;

use super::{Connective, Term};

// Only `->` and the prefix operators survive desugaring, so two levels suffice:
// an implication needs parentheses under a prefix operator or as a left operand.
impl<C: Connective> fmt::Display for Term<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Neg(a) => {
                f.write_str("~")?;
                write_operand(a, f)
            }
            Term::Scalar(c, a) => {
                c.write_prefix(f)?;
                f.write_str(" ")?;
                write_operand(a, f)
            }
            Term::Implies(a, b) => {
                write_operand(a, f)?;
                write!(f, " -> {b}")
            }
        }
    }
}

fn write_operand<C: Connective>(t: &Term<C>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Implies(..) => write!(f, "({t})"),
        _ => write!(f, "{t}"),
    }
}
