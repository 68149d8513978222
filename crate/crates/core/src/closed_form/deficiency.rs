//! Nonvanishing modules of deficiency `omega^i(S/J_G)` and the
//! Cohen-Macaulay type flags for `K_{m,n}`.
//!
//! Each family with an explicit table gets a case; pairs without one are
//! reported as [`DeficiencyCase::SmallSpecial`] with flags only.

use serde::{Deserialize, Serialize};

use super::check_sizes;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeficiencyCase {
    /// `n = 1, m > 2`
    Star,
    /// `n = 2, m > 3`
    SmallPartTwo,
    /// `m = n + 1, n > 3`
    AdjacentSizes,
    /// `m = 2n - 2, m > n + 1`
    DoubleMinusTwo,
    /// `m >= n > 1` outside the special families, all five indices distinct
    Generic,
    SmallSpecial,
}

impl DeficiencyCase {
    pub fn label(self) -> &'static str {
        match self {
            DeficiencyCase::Star => "star",
            DeficiencyCase::SmallPartTwo => "n=2",
            DeficiencyCase::AdjacentSizes => "m=n+1",
            DeficiencyCase::DoubleMinusTwo => "m=2n-2",
            DeficiencyCase::Generic => "generic",
            DeficiencyCase::SmallSpecial => "small-special",
        }
    }

    pub fn from_label(s: &str) -> Option<DeficiencyCase> {
        [
            DeficiencyCase::Star,
            DeficiencyCase::SmallPartTwo,
            DeficiencyCase::AdjacentSizes,
            DeficiencyCase::DoubleMinusTwo,
            DeficiencyCase::Generic,
            DeficiencyCase::SmallSpecial,
        ]
        .into_iter()
        .find(|c| c.label() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyRow {
    pub index: usize,
    pub depth: usize,
    pub dim: usize,
    pub description: String,
}

impl DeficiencyRow {
    fn new(index: usize, depth: usize, dim: usize, description: String) -> DeficiencyRow {
        DeficiencyRow {
            index,
            depth,
            dim,
            description,
        }
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.depth == self.dim
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmFlags {
    pub cohen_macaulay: bool,
    pub sequentially_cm: bool,
    pub canonically_cm: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyReport {
    pub m: usize,
    pub n: usize,
    pub case: DeficiencyCase,
    /// Rows sorted by index; empty for [`DeficiencyCase::SmallSpecial`].
    pub rows: Vec<DeficiencyRow>,
    pub flags: CmFlags,
}

impl DeficiencyReport {
    /// Indices `i` with `omega^i != 0`, or `None` when no table applies.
    pub fn nonvanishing_indices(&self) -> Option<Vec<usize>> {
        (self.case != DeficiencyCase::SmallSpecial)
            .then(|| self.rows.iter().map(|r| r.index).collect())
    }
}

pub fn cm_classification(m: usize, n: usize) -> Result<CmFlags> {
    check_sizes(m, n)?;
    let cohen_macaulay = matches!((m, n), (1, 1) | (2, 1));
    let sequentially_cm = cohen_macaulay || (n == 1 && m > 2) || (m, n) == (2, 2);
    Ok(CmFlags {
        cohen_macaulay,
        sequentially_cm,
        canonically_cm: true,
    })
}

fn rows_for(m: usize, n: usize) -> (DeficiencyCase, Vec<DeficiencyRow>) {
    use DeficiencyCase::*;
    let r = DeficiencyRow::new;
    let (case, rows) = if n == 1 && m > 2 {
        (
            Star,
            vec![
                r(m + 2, m + 2, m + 2, format!("CM, omega^{0}(omega^{0}) = (J~,A_1)/J~", m + 2)),
                r(2 * m, 2 * m, 2 * m, format!("S/A_1(-{})", 2 * m)),
            ],
        )
    } else if n == 2 && m > 3 {
        (
            SmallPartTwo,
            vec![
                r(4, 4, 4, format!("omega^4((J~,B_{m})/B_{m})")),
                r(m + 2, m + 1, m + 1, format!("omega^{}(S/(J~,A_2))", m + 1)),
                r(m + 3, m + 3, m + 3, "omega(S/J~)".into()),
                r(2 * m, 2 * m, 2 * m, format!("S/A_2(-{})", 2 * m)),
            ],
        )
    } else if m == n + 1 && n > 3 {
        (
            AdjacentSizes,
            vec![
                r(n + 2, n + 1, n + 1, format!("omega^{}(S/(J~,B_{m}))", n + 1)),
                r(n + 3, n + 2, n + 2, format!("omega^{}(S/(J~,A_{n}))", n + 2)),
                r(2 * n, 2 * n, 2 * n, format!("S/B_{m}(-{})", 2 * n)),
                r(
                    2 * n + 2,
                    2 * n + 2,
                    2 * n + 2,
                    format!("omega(S/J~) + S/A_{n}(-{})", 2 * n + 2),
                ),
            ],
        )
    } else if n >= 2 && m + 2 == 2 * n && m > n + 1 {
        (
            DoubleMinusTwo,
            vec![
                r(n + 2, n + 1, n + 1, format!("omega^{}(S/(J~,B_{m}))", n + 1)),
                r(
                    m + 2,
                    m + 1,
                    m + 2,
                    format!("omega^{}(S/(J~,A_{n})) + S/B_{m}(-{})", m + 1, 2 * n),
                ),
                r(m + n + 1, m + n + 1, m + n + 1, "omega(S/J~)".into()),
                r(2 * m, 2 * m, 2 * m, format!("S/A_{n}(-{})", 2 * m)),
            ],
        )
    } else if n > 1 && m != n + 1 && m + 2 != 2 * n {
        (
            Generic,
            vec![
                r(n + 2, n + 1, n + 1, format!("omega^{}(S/(J~,B_{m}))", n + 1)),
                r(m + 2, m + 1, m + 1, format!("omega^{}(S/(J~,A_{n}))", m + 1)),
                r(2 * n, 2 * n, 2 * n, format!("S/B_{m}(-{})", 2 * n)),
                r(m + n + 1, m + n + 1, m + n + 1, "omega(S/J~)".into()),
                r(2 * m, 2 * m, 2 * m, format!("S/A_{n}(-{})", 2 * m)),
            ],
        )
    } else {
        (SmallSpecial, Vec::new())
    };
    let mut rows = rows;
    rows.sort_by_key(|r| r.index);
    // colliding indices would need merged rows that no table provides
    if rows.windows(2).any(|w| w[0].index == w[1].index) {
        return (SmallSpecial, Vec::new());
    }
    (case, rows)
}

pub fn deficiency_classification(m: usize, n: usize) -> Result<DeficiencyReport> {
    let flags = cm_classification(m, n)?;
    let (case, rows) = rows_for(m, n);
    Ok(DeficiencyReport {
        m,
        n,
        case,
        rows,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{depth, krull_dim};

    #[test]
    fn star_case() {
        let r = deficiency_classification(3, 1).unwrap();
        assert_eq!(r.case, DeficiencyCase::Star);
        assert_eq!(r.nonvanishing_indices(), Some(vec![5, 6]));
        let top = &r.rows[1];
        assert_eq!((top.index, top.depth, top.dim), (6, 6, 6));
        assert_eq!(top.description, "S/A_1(-6)");
        assert!(r.rows[0].is_cohen_macaulay());
        assert_eq!(r.rows[0].dim, 5);
    }

    #[test]
    fn double_minus_two_case() {
        let r = deficiency_classification(6, 4).unwrap();
        assert_eq!(r.case, DeficiencyCase::DoubleMinusTwo);
        assert_eq!(r.nonvanishing_indices(), Some(vec![6, 8, 11, 12]));
        let row = r.rows.iter().find(|x| x.index == 8).unwrap();
        assert_eq!((row.depth, row.dim), (7, 8));
        assert!(!row.is_cohen_macaulay());
    }

    #[test]
    fn generic_case() {
        let r = deficiency_classification(7, 4).unwrap();
        assert_eq!(r.case, DeficiencyCase::Generic);
        assert_eq!(r.nonvanishing_indices(), Some(vec![6, 8, 9, 12, 14]));
        assert!(r.rows.iter().all(DeficiencyRow::is_cohen_macaulay));
    }

    #[test]
    fn adjacent_and_two_cases() {
        let r = deficiency_classification(5, 4).unwrap();
        assert_eq!(r.case, DeficiencyCase::AdjacentSizes);
        assert_eq!(r.nonvanishing_indices(), Some(vec![6, 7, 8, 10]));
        let r = deficiency_classification(5, 2).unwrap();
        assert_eq!(r.case, DeficiencyCase::SmallPartTwo);
        assert_eq!(r.nonvanishing_indices(), Some(vec![4, 7, 8, 10]));
    }

    #[test]
    fn small_special_pairs() {
        for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3), (3, 3), (4, 4), (9, 9)] {
            let r = deficiency_classification(m, n).unwrap();
            assert_eq!(r.case, DeficiencyCase::SmallSpecial, "({m},{n})");
            assert_eq!(r.nonvanishing_indices(), None);
        }
        let r = deficiency_classification(2, 2).unwrap();
        assert_eq!(
            (r.flags.cohen_macaulay, r.flags.sequentially_cm),
            (false, true)
        );
    }

    #[test]
    fn cm_flags() {
        let f = |m, n| {
            let c = cm_classification(m, n).unwrap();
            (c.cohen_macaulay, c.sequentially_cm, c.canonically_cm)
        };
        assert_eq!(f(2, 1), (true, true, true));
        assert_eq!(f(4, 1), (false, true, true));
        assert_eq!(f(3, 2), (false, false, true));
        assert_eq!(f(1, 1), (true, true, true));
        assert!(cm_classification(1, 2).is_err());
    }

    #[test]
    fn tables_are_consistent_with_depth_and_dimension() {
        for m in 1..=13 {
            for n in 1..=m.min(14 - m) {
                let r = deficiency_classification(m, n).unwrap();
                let Some(idx) = r.nonvanishing_indices() else { continue };
                let (lo, hi) = (depth(m, n).unwrap(), krull_dim(m, n).unwrap());
                assert_eq!(idx.first(), Some(&lo), "({m},{n})");
                assert_eq!(idx.last(), Some(&hi), "({m},{n})");
                let expected_len = match r.case {
                    DeficiencyCase::Star => 2,
                    DeficiencyCase::Generic => 5,
                    _ => 4,
                };
                assert_eq!(idx.len(), expected_len, "({m},{n})");
                for row in &r.rows {
                    assert!(row.depth <= row.dim && row.dim <= row.index, "({m},{n}) {row:?}");
                    assert!(row.depth + 1 >= row.index, "({m},{n}) {row:?}");
                }
                // sequentially CM exactly when each omega^i is i-dimensional CM
                let seq = r.rows.iter().all(|x| x.depth == x.index && x.dim == x.index);
                assert_eq!(seq, r.flags.sequentially_cm, "({m},{n})");
                // the canonical module is always CM
                let top = r.rows.last().unwrap();
                assert!(top.is_cohen_macaulay() && top.dim == hi);
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for c in [
            DeficiencyCase::Star,
            DeficiencyCase::SmallPartTwo,
            DeficiencyCase::AdjacentSizes,
            DeficiencyCase::DoubleMinusTwo,
            DeficiencyCase::Generic,
            DeficiencyCase::SmallSpecial,
        ] {
            assert_eq!(DeficiencyCase::from_label(c.label()), Some(c));
        }
    }
}
