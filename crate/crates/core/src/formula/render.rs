use super::Formula;

/// Renders `f` in concrete syntax with the fewest parentheses that still
/// parse back to the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn needs_parens(f: &Formula) -> bool {
    matches!(f, Formula::Implies(..)) && !f.is_top()
}

fn write_operand(f: &Formula, out: &mut String) {
    if needs_parens(f) {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}

fn write_formula(f: &Formula, out: &mut String) {
    if f.is_top() {
        out.push_str("true");
        return;
    }
    if f.is_bottom() {
        out.push_str("false");
        return;
    }
    match f {
        Formula::Var(v) => out.push_str(v),
        Formula::Not(b) => {
            out.push('!');
            write_operand(b, out);
        }
        Formula::Implies(l, r) => {
            write_operand(l, out);
            out.push_str(" -> ");
            write_formula(r, out);
        }
        Formula::KnowWho(b) => {
            out.push_str("W ");
            write_operand(b, out);
        }
        Formula::Know(b) => {
            out.push_str("K ");
            write_operand(b, out);
        }
        Formula::AllAgents(b) => {
            out.push_str("A ");
            write_operand(b, out);
        }
        Formula::AtName(n, b) => {
            out.push('@');
            out.push_str(n);
            out.push(' ');
            write_operand(b, out);
        }
    }
}
