use super::{is_guarded_expr, sum_list, Action, Expr, Name};

/// A sum `Σ aᵢ.Eᵢ + Σ Wⱼ` with summands sorted and duplicates removed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SumView {
    pub prefixed: Vec<(Action, Expr)>,
    pub vars: Vec<Name>,
}

impl SumView {
    pub fn new(mut prefixed: Vec<(Action, Expr)>, mut vars: Vec<Name>) -> SumView {
        prefixed.sort();
        prefixed.dedup();
        vars.sort();
        vars.dedup();
        SumView { prefixed, vars }
    }

    pub fn is_empty(&self) -> bool {
        self.prefixed.is_empty() && self.vars.is_empty()
    }

    /// Summands in canonical order: variables first, then prefixes.
    pub fn summands(&self) -> Vec<Expr> {
        let vars = self.vars.iter().map(|v| Expr::Var(v.clone()));
        let pre = self
            .prefixed
            .iter()
            .map(|(a, b)| Expr::prefix(a.clone(), b.clone()));
        vars.chain(pre).collect()
    }

    /// The right-nested sum of [`SumView::summands`]; `0` when empty.
    pub fn to_expr(&self) -> Expr {
        sum_list(self.summands())
    }

    /// All bodies are variables.
    pub fn is_simple(&self) -> bool {
        self.prefixed.iter().all(|(_, b)| matches!(b, Expr::Var(_)))
    }
}

/// Same as [`SumView::to_expr`].
pub fn sum_of(view: &SumView) -> Expr {
    view.to_expr()
}

/// Leaves of the sum tree rooted at `e`, left to right.
pub fn flatten_sum(e: &Expr) -> Vec<Expr> {
    fn go(e: &Expr, out: &mut Vec<Expr>) {
        match e {
            Expr::Sum(l, r) => {
                go(l, out);
                go(r, out);
            }
            other => out.push(other.clone()),
        }
    }
    let mut out = Vec::new();
    go(e, &mut out);
    out
}

/// Reads `e` as a standard sum, ignoring how the sum is nested and
/// dropping `0` summands. Fails when some leaf is a `rec` or a prefix whose
/// body is not a guarded expression.
pub fn as_standard_sum(e: &Expr) -> Option<SumView> {
    let mut prefixed = Vec::new();
    let mut vars = Vec::new();
    for leaf in flatten_sum(e) {
        match leaf {
            Expr::Nil => {}
            Expr::Var(x) => vars.push(x),
            Expr::Prefix(a, b) if is_guarded_expr(&b) => prefixed.push((a, (*b).clone())),
            _ => return None,
        }
    }
    Some(SumView::new(prefixed, vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn standard_sum_examples() {
        let v = as_standard_sum(&p("a.0 + X")).unwrap();
        assert_eq!(v.prefixed, vec![(Action::visible("a"), Expr::Nil)]);
        assert_eq!(v.vars, vec![Name::from("X")]);
        assert!(as_standard_sum(&p("rec X. a.X")).is_none());
        assert!(as_standard_sum(&Expr::Nil).unwrap().is_empty());
    }

    #[test]
    fn nesting_and_duplicates_ignored() {
        let a = as_standard_sum(&p("(b.0 + a.0) + (0 + a.0)")).unwrap();
        let b = as_standard_sum(&p("a.0 + b.0")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_expr(), p("a.0 + b.0"));
    }

    #[test]
    fn unguarded_body_rejected() {
        assert!(as_standard_sum(&p("a.rec X. tau.X")).is_none());
    }
}
