//! Pretty-printer emitting the concrete grammar with minimal parentheses.
//!
//! The printer is the inverse of the parser: `parse(print(f)) == f` for every
//! formula (tested as a round-trip property). Prefix operators take their
//! argument bare when it is an atom or another prefix application, and
//! parenthesised when it is an infix application.

use super::Formula;

/// Binding levels, tightest first: prefix/atoms 4, `&` 3, `|` 2, `->` 1, `-<` 0.
fn level(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        Var(_) | One | Zero | Both | Neither => 4,
        Inv(_) | Neg(_) | Conf(_) | Delta(_) | SNot(_) | IDelta(_) | ISNot(_) | BoxM(_)
        | DiaM(_) | IBox(_) | IDia(_) | Box1(_) | Dia1(_) | Box2(_) | Dia2(_) => 4,
        And(..) | IAnd(..) => 3,
        Or(..) | IOr(..) => 2,
        Impl(..) | IImpl(..) => 1,
        Coimpl(..) | ICoimpl(..) => 0,
    }
}

fn write_at(f: &Formula, min_level: u8, out: &mut String) {
    let lvl = level(f);
    let needs_parens = lvl < min_level;
    if needs_parens {
        out.push('(');
    }
    write_node(f, out);
    if needs_parens {
        out.push(')');
    }
}

fn write_prefix(op: &str, arg: &Formula, out: &mut String) {
    out.push_str(op);
    if level(arg) == 4 {
        out.push(' ');
        write_node(arg, out);
    } else {
        out.push('(');
        write_node(arg, out);
        out.push(')');
    }
}

fn write_infix(op: &str, l: &Formula, r: &Formula, lvl: u8, right_assoc: bool, out: &mut String) {
    // Left-associative operators reassociate a same-level right child, so the
    // right child must be printed one level tighter (and dually on the left
    // for right-associative ones).
    let (lmin, rmin) = if right_assoc {
        (lvl + 1, lvl)
    } else {
        (lvl, lvl + 1)
    };
    write_at(l, lmin, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write_at(r, rmin, out);
}

fn write_node(f: &Formula, out: &mut String) {
    use Formula::*;
    match f {
        Var(name) => out.push_str(name),
        One => out.push('1'),
        Zero => out.push('0'),
        Both => out.push('B'),
        Neither => out.push('N'),
        Inv(a) => write_prefix("inv", a, out),
        Neg(a) => write_prefix("neg", a, out),
        Conf(a) => write_prefix("conf", a, out),
        Delta(a) => write_prefix("delta", a, out),
        SNot(a) => write_prefix("snot", a, out),
        IDelta(a) => write_prefix("idelta", a, out),
        ISNot(a) => write_prefix("isnot", a, out),
        BoxM(a) => write_prefix("box", a, out),
        DiaM(a) => write_prefix("dia", a, out),
        IBox(a) => write_prefix("ibox", a, out),
        IDia(a) => write_prefix("idia", a, out),
        Box1(a) => write_prefix("box1", a, out),
        Dia1(a) => write_prefix("dia1", a, out),
        Box2(a) => write_prefix("box2", a, out),
        Dia2(a) => write_prefix("dia2", a, out),
        And(l, r) => write_infix("&", l, r, 3, false, out),
        IAnd(l, r) => write_infix("iand", l, r, 3, false, out),
        Or(l, r) => write_infix("|", l, r, 2, false, out),
        IOr(l, r) => write_infix("ior", l, r, 2, false, out),
        Impl(l, r) => write_infix("->", l, r, 1, true, out),
        IImpl(l, r) => write_infix("iimpl", l, r, 1, true, out),
        Coimpl(l, r) => write_infix("-<", l, r, 0, false, out),
        ICoimpl(l, r) => write_infix("icoimpl", l, r, 0, false, out),
    }
}

/// Renders the formula in the concrete grammar with minimal parentheses.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write_node(f, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn round(s: &str) -> String {
        print(&parse(s).unwrap())
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(round("p -> p"), "p -> p");
        assert_eq!(round("inv inv p"), "inv inv p");
        assert_eq!(round("box(p -> idia(neg q)) | conf r"), "box(p -> idia neg q) | conf r");
        assert_eq!(round("(p & q) | r"), "p & q | r");
        assert_eq!(round("p & (q | r)"), "p & (q | r)");
        assert_eq!(round("p -> (q -> r)"), "p -> q -> r");
        assert_eq!(round("(p -> q) -> r"), "(p -> q) -> r");
        assert_eq!(round("(p -< q) -< r"), "p -< q -< r");
        assert_eq!(round("p -< (q -< r)"), "p -< (q -< r)");
        assert_eq!(round("box (p)"), "box p");
    }

    #[test]
    fn round_trip_on_samples() {
        for s in [
            "p",
            "0",
            "1",
            "B iand N",
            "inv(p | q) -> delta r",
            "snot p -< conf(q iimpl r)",
            "box1(p & q) -> dia2 p",
            "idelta p ior isnot q",
            "ibox p icoimpl idia q",
        ] {
            let ast = parse(s).unwrap();
            assert_eq!(parse(&print(&ast)).unwrap(), ast, "round-trip failed for {s}");
        }
    }
}
