use super::CheckRow;

/// Accumulates one per-block inequality over many blocks and reports the
/// tightest block.
///
/// With `slack = 0` the comparison is exact. A positive slack relaxes it by
/// `slack · |rhs|`, for chains whose two sides are summed in different orders
/// or carry a rounded constant.
#[derive(Debug, Clone)]
pub struct Chain {
    name: String,
    instance: String,
    op: &'static str,
    slack: f64,
    holds: bool,
    /// (margin, r, lhs, rhs) of the tightest block so far.
    worst: Option<(f64, usize, f64, f64)>,
}

impl Chain {
    pub fn ge(name: &str, instance: String, slack: f64) -> Self {
        Self::new(name, instance, ">=", slack)
    }

    pub fn le(name: &str, instance: String, slack: f64) -> Self {
        Self::new(name, instance, "<=", slack)
    }

    fn new(name: &str, instance: String, op: &'static str, slack: f64) -> Self {
        Chain {
            name: name.to_string(),
            instance,
            op,
            slack,
            holds: true,
            worst: None,
        }
    }

    pub fn push(&mut self, r: usize, lhs: f64, rhs: f64) {
        let (big, small) = if self.op == ">=" {
            (lhs, rhs)
        } else {
            (rhs, lhs)
        };
        let allowance = self.slack * rhs.abs();
        let ok = big >= small - allowance;
        self.holds &= ok;
        let margin = (big - small) / rhs.abs().max(f64::MIN_POSITIVE);
        if self.worst.is_none_or(|(w, ..)| margin < w) {
            self.worst = Some((margin, r, lhs, rhs));
        }
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn finish(self) -> CheckRow {
        let (r, lhs, rhs) = match self.worst {
            Some((_, r, lhs, rhs)) => (Some(r), lhs, rhs),
            None => (None, 0.0, 0.0),
        };
        CheckRow::new(&self.name, self.instance, r, lhs, self.op, rhs, self.holds)
    }
}
