use std::collections::BTreeMap;

use fuzzyseq_core::{DifferenceWindow, ExampleId};

use super::DeviationRow;

pub const ALPHA_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
pub const ORACLE_TOLERANCE: f64 = 1e-12;

/// Index ranges scanned for pure windows: small indices, where the special
/// classes are dense, and a stretch past the representative base.
const RANGES: [(u64, u64); 2] = [(1, 200), (1_000_000, 1_000_100)];

/// Computed Δ^m cuts against the published closed forms, for `1 <= m <= m_max`.
///
/// Every row expects a left deviation within [`ORACLE_TOLERANCE`]. The right
/// deviation is expected to be `2^m(1 − α)` for `thm-2.7-strict`, whose
/// published right endpoint is off by that amount, and zero otherwise.
pub fn verify_closed_forms(id: ExampleId, m_max: u32, alphas: &[f64]) -> Vec<DeviationRow> {
    let seq = id.sequence();
    let mut rows = Vec::new();
    for m in 1..=m_max {
        // (class, alpha index) -> (samples, lo, hi)
        let mut worst: BTreeMap<(&'static str, usize), (u64, f64, f64)> = BTreeMap::new();
        for (from, to) in RANGES {
            for (k, x) in DifferenceWindow::new(&seq, m, from..=to) {
                let Some(class) = id.pure_class(m, k) else {
                    continue;
                };
                for (i, &alpha) in alphas.iter().enumerate() {
                    let Some(published) = id.closed_form(m, k, alpha) else {
                        continue;
                    };
                    let computed = x.alpha_cut(alpha).expect("alpha in [0, 1]");
                    let entry = worst.entry((class.name(), i)).or_insert((0, 0.0, 0.0));
                    entry.0 += 1;
                    entry.1 = entry.1.max((computed.lo() - published.lo()).abs());
                    entry.2 = entry.2.max((computed.hi() - published.hi()).abs());
                }
            }
        }
        for ((class, i), (samples, lo, hi)) in worst {
            let alpha = alphas[i];
            let expected_hi = if id == ExampleId::Thm27Strict {
                (1.0 - alpha) * 2f64.powi(m as i32)
            } else {
                0.0
            };
            rows.push(DeviationRow {
                example: id.name().to_string(),
                m,
                class: class.to_string(),
                alpha,
                samples,
                lo_deviation: lo,
                hi_deviation: hi,
                expected_hi,
                pass: lo <= ORACLE_TOLERANCE && (hi - expected_hi).abs() <= ORACLE_TOLERANCE,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_forms_agree() {
        for id in [
            ExampleId::OrderGtOne,
            ExampleId::Thm212Strict,
            ExampleId::Thm25Strict,
        ] {
            let rows = verify_closed_forms(id, 3, &ALPHA_GRID);
            assert!(!rows.is_empty());
            for row in rows {
                assert!(row.pass, "{row:?}");
                assert_eq!(row.hi_deviation, 0.0);
            }
        }
    }

    #[test]
    fn right_endpoint_discrepancy_is_reported() {
        let rows = verify_closed_forms(ExampleId::Thm27Strict, 1, &[0.0]);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].hi_deviation, 2.0);
        assert!(rows[0].pass);
    }
}
