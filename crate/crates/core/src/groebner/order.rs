//! Monomial orders on `k[x, y, t]` (variable indices 0, 1, 2).

use std::cmp::Ordering;

pub type Mono = [u32; 3];

pub const X: usize = 0;
pub const Y: usize = 1;
pub const T: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// `priority` lists variables from most to least significant.  When
/// `eliminate > 0` the first `eliminate` variables form a block compared
/// before the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
    pub eliminate: usize,
}

impl MonomialOrder {
    /// Lex with `y > x`; the default output order.
    pub fn lex_y_x() -> Self {
        MonomialOrder { kind: OrderKind::Lex, priority: vec![Y, X], eliminate: 0 }
    }

    /// Lex with `x > y`.
    pub fn lex_x_y() -> Self {
        MonomialOrder { kind: OrderKind::Lex, priority: vec![X, Y], eliminate: 0 }
    }

    /// Degree reverse lex with `y > x`.
    pub fn degrevlex() -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, priority: vec![Y, X], eliminate: 0 }
    }

    /// Block order eliminating the auxiliary variable `t`, then degrevlex.
    pub fn eliminate_t() -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, priority: vec![T, Y, X], eliminate: 1 }
    }

    pub fn name(&self) -> String {
        let names = ["x", "y", "t"];
        let vars: Vec<&str> = self.priority.iter().map(|&v| names[v]).collect();
        let kind = match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
        };
        if self.eliminate > 0 {
            format!("block({kind}; {})", vars.join(" > "))
        } else {
            format!("{kind}({})", vars.join(" > "))
        }
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        if self.eliminate > 0 {
            let (head, tail) = self.priority.split_at(self.eliminate);
            cmp_kind(self.kind, head, a, b).then_with(|| cmp_kind(self.kind, tail, a, b))
        } else {
            cmp_kind(self.kind, &self.priority, a, b)
        }
    }
}

fn cmp_kind(kind: OrderKind, vars: &[usize], a: &Mono, b: &Mono) -> Ordering {
    match kind {
        OrderKind::Lex => {
            for &v in vars {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }
        OrderKind::DegRevLex => {
            let da: u32 = vars.iter().map(|&v| a[v]).sum();
            let db: u32 = vars.iter().map(|&v| b[v]).sum();
            if da != db {
                return da.cmp(&db);
            }
            for &v in vars.iter().rev() {
                if a[v] != b[v] {
                    return b[v].cmp(&a[v]);
                }
            }
            Ordering::Equal
        }
    }
}

pub fn divides(a: &Mono, b: &Mono) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]
}

pub fn lcm(a: &Mono, b: &Mono) -> Mono {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

pub fn quotient(a: &Mono, b: &Mono) -> Mono {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn mul(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn degree(a: &Mono) -> u32 {
    a[0] + a[1] + a[2]
}
