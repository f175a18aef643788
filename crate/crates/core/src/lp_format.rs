//! CPLEX-style LP text for constraint systems.
//!
//! Variables are `x{id}`, one per edge, all declared free: nonnegativity is
//! carried by explicit named rows so the row set matches the system exactly.
//! Coefficients print as exact decimals when possible. A row with any other
//! rational is multiplied by the lcm of its denominators and preceded by a
//! comment giving the exact form.

use std::fmt::Write as _;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::Result;
use crate::geometry::constraint::{ConstraintSystem, LinearConstraint};
use crate::rational::{exact_decimal, QPoint, Rational};

fn term_list(terms: &[(usize, Rational)]) -> String {
    if terms.is_empty() {
        return "0 x0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        let sign = match (i, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coef = if mag.is_one() {
            String::new()
        } else {
            format!("{} ", exact_decimal(&mag).expect("coefficients are decimal here"))
        };
        let _ = write!(out, "{sign}{coef}x{e}");
    }
    out
}

fn is_decimal(r: &Rational) -> bool {
    exact_decimal(r).is_some()
}

fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

fn write_row(out: &mut String, c: &LinearConstraint) {
    let terms: Vec<(usize, Rational)> = c.coefficients().iter().map(|(e, v)| (*e, v.clone())).collect();
    let decimal = terms.iter().all(|(_, v)| is_decimal(v)) && is_decimal(&c.rhs);
    if decimal {
        let _ = writeln!(out, " {}: {} {} {}", c.name, term_list(&terms), c.sense, exact_decimal(&c.rhs).unwrap());
        return;
    }
    let _ = writeln!(out, "\\ exact: {c}");
    let factor = Rational::from_integer(denominator_lcm(terms.iter().map(|(_, v)| v).chain([&c.rhs])));
    let scaled: Vec<(usize, Rational)> = terms.into_iter().map(|(e, v)| (e, v * &factor)).collect();
    let rhs = &c.rhs * &factor;
    let _ = writeln!(out, " {}: {} {} {}", c.name, term_list(&scaled), c.sense, rhs.numer());
}

/// Renders `sys` with the objective `minimize objective·x` (zero when absent).
pub fn emit_lp(sys: &ConstraintSystem, objective: Option<&QPoint>) -> Result<String> {
    let dim = sys.dim();
    let mut out = String::new();
    let _ = writeln!(out, "\\ {} variables, {} rows", dim, sys.len());
    out.push_str("Minimize\n");
    let obj_terms: Vec<(usize, Rational)> = match objective {
        Some(w) => {
            w.check_dim(dim)?;
            w.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, c.clone())).collect()
        }
        None => Vec::new(),
    };
    if obj_terms.iter().all(|(_, v)| is_decimal(v)) {
        let _ = writeln!(out, " obj: {}", term_list(&obj_terms));
    } else {
        // objective scaling only changes the optimal value, not the optimum
        let factor = Rational::from_integer(denominator_lcm(obj_terms.iter().map(|(_, v)| v)));
        let _ = writeln!(out, "\\ objective scaled by {}", factor.numer());
        let scaled: Vec<(usize, Rational)> = obj_terms.into_iter().map(|(e, v)| (e, v * &factor)).collect();
        let _ = writeln!(out, " obj: {}", term_list(&scaled));
    }
    out.push_str("Subject To\n");
    for c in sys.iter() {
        write_row(&mut out, c);
    }
    out.push_str("Bounds\n");
    for e in 0..dim {
        let _ = writeln!(out, " x{e} free");
    }
    out.push_str("End\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptions::{full_p, q_description};
    use crate::geometry::constraint::{ConstraintTag, Sense};
    use crate::graph::Graph;
    use crate::rational::{int, ratio};

    fn row_lines(text: &str) -> Vec<&str> {
        let start = text.find("Subject To\n").unwrap() + "Subject To\n".len();
        let end = text.find("Bounds\n").unwrap();
        text[start..end].lines().filter(|l| !l.starts_with('\\')).collect()
    }

    #[test]
    fn full_description_of_k4() {
        let sys = full_p(&Graph::complete(4)).unwrap();
        let text = emit_lp(&sys, None).unwrap();
        let rows = row_lines(&text);
        assert_eq!(rows.len(), 23);
        for (line, c) in rows.iter().zip(sys.iter()) {
            assert!(line.starts_with(&format!(" {}: ", c.name)), "{line}");
        }
        assert!(text.contains(" obj: 0 x0\n"));
        assert!(text.contains(" x5 free\n"));
        assert!(text.ends_with("End\n"));
        assert_eq!(text, emit_lp(&full_p(&Graph::complete(4)).unwrap(), None).unwrap());
    }

    #[test]
    fn survives_the_json_round_trip() {
        let sys = q_description(&Graph::prism()).unwrap();
        let back = ConstraintSystem::from_json(&sys.to_json().unwrap()).unwrap();
        let w = QPoint::from_ints(&[3, 1, 4, 1, 5, 9, 2, 6, 5]);
        assert_eq!(emit_lp(&sys, Some(&w)).unwrap(), emit_lp(&back, Some(&w)).unwrap());
    }

    #[test]
    fn scales_non_decimal_rows() {
        let mut sys = ConstraintSystem::new(2);
        sys.push(LinearConstraint::new("half", ConstraintTag::Other, [(0, ratio(1, 2)), (1, ratio(-3, 4))], Sense::Le, int(1)))
            .unwrap();
        sys.push(LinearConstraint::new("third", ConstraintTag::Other, [(0, ratio(1, 3)), (1, int(1))], Sense::Ge, ratio(2, 3)))
            .unwrap();
        let text = emit_lp(&sys, Some(&QPoint::new(vec![ratio(1, 3), int(0)]))).unwrap();
        assert!(text.contains(" half: 0.5 x0 - 0.75 x1 <= 1\n"), "{text}");
        assert!(text.contains("\\ exact: third: 1/3 x0 + x1 >= 2/3\n"), "{text}");
        assert!(text.contains(" third: x0 + 3 x1 >= 2\n"), "{text}");
        assert!(text.contains(" obj: x0\n"), "{text}");
    }
}
