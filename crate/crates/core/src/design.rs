//! Crossover designs as `n × t` arrays and the direct counting oracle.
//!
//! `o_i(x, y)` is the number of rows in which treatment `y` sits exactly `i`
//! periods after `x`. A uniform design with as many periods as treatments is
//! Roman-k when `o_i(x, y) ≤ n/t` for all distinct `x, y` and every `i ≤ k`.
//! [`balance_report`] computes those counts by scanning the rows and shares no
//! code with the triangle scans, so it serves as their cross-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangle::{Arrangement, TupleFamily};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Design {
    treatments: usize,
    rows: Vec<Vec<usize>>,
}

impl Design {
    /// Rectangular rows with `t` periods and entries in `0..t`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::MalformedDesign("no rows".into()))?;
        if t == 0 {
            return Err(Error::MalformedDesign("empty row".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != t {
                return Err(Error::MalformedDesign(format!(
                    "row {} has {} periods, expected {t}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= t) {
                return Err(Error::MalformedDesign(format!(
                    "row {} has treatment {bad} outside 0..{t}",
                    i + 1
                )));
            }
        }
        Ok(Design {
            treatments: t,
            rows,
        })
    }

    pub fn subjects(&self) -> usize {
        self.rows.len()
    }

    pub fn periods(&self) -> usize {
        self.treatments
    }

    pub fn treatments(&self) -> usize {
        self.treatments
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Each treatment equally often in every row and every column.
    pub fn check_uniform(&self) -> Result<()> {
        let t = self.treatments;
        let n = self.rows.len();
        for (i, row) in self.rows.iter().enumerate() {
            let mut seen = vec![false; t];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NonUniform(format!(
                        "row {} repeats treatment {x}",
                        i + 1
                    )));
                }
            }
        }
        if n % t != 0 {
            return Err(Error::NonUniform(format!(
                "{n} subjects is not a multiple of {t} treatments"
            )));
        }
        for col in 0..t {
            let mut counts = vec![0usize; t];
            for row in &self.rows {
                counts[row[col]] += 1;
            }
            if let Some(x) = counts.iter().position(|&c| c != n / t) {
                return Err(Error::NonUniform(format!(
                    "treatment {x} occurs {} times in period {}",
                    counts[x],
                    col + 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_latin_square(&self) -> bool {
        self.rows.len() == self.treatments && self.check_uniform().is_ok()
    }

    /// `o_i(x, y)` as a flat `t × t` matrix indexed `x * t + y`.
    pub fn pair_counts(&self, distance: usize) -> Vec<usize> {
        let t = self.treatments;
        let mut counts = vec![0usize; t * t];
        if distance == 0 || distance >= t {
            return counts;
        }
        for row in &self.rows {
            for c in 0..t - distance {
                counts[row[c] * t + row[c + distance]] += 1;
            }
        }
        counts
    }

    /// One subject per line, comma-separated treatments, newline-terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Design::to_csv`]; blank lines and lines starting with `#`
    /// are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(',')
                .map(|cell| {
                    cell.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line: i + 1,
                        reason: format!("`{}` is not a treatment index", cell.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 0,
                reason: "no rows".into(),
            });
        }
        Design::new(rows)
    }

    /// Rows sorted lexicographically, for comparisons up to row order.
    pub fn sorted_rows(&self) -> Vec<Vec<usize>> {
        let mut rows = self.rows.clone();
        rows.sort();
        rows
    }
}

/// JSON envelope `{n, p, t, rows, report}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignEnvelope {
    pub n: usize,
    pub p: usize,
    pub t: usize,
    pub rows: Vec<Vec<usize>>,
    pub report: Option<BalanceReport>,
}

impl DesignEnvelope {
    pub fn new(design: &Design, report: Option<BalanceReport>) -> Self {
        DesignEnvelope {
            n: design.subjects(),
            p: design.periods(),
            t: design.treatments(),
            rows: design.rows.clone(),
            report,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub n: usize,
    pub t: usize,
    /// `n / t`, the Roman-k ceiling on every `o_i(x, y)`.
    pub threshold: usize,
    /// `M_i = max_{x≠y} o_i(x, y)` for `i = 1..t-1`.
    pub max_per_distance: Vec<usize>,
    pub max_k: usize,
    pub roman: bool,
    pub vatican: bool,
    /// `o_1(x, y)` constant over ordered pairs of distinct treatments.
    pub balanced: bool,
}

pub fn balance_report(design: &Design) -> Result<BalanceReport> {
    design.check_uniform()?;
    let t = design.treatments();
    let n = design.subjects();
    let threshold = n / t;
    let mut max_per_distance = Vec::with_capacity(t.saturating_sub(1));
    let mut balanced = true;
    for i in 1..t {
        let counts = design.pair_counts(i);
        let mut m = 0;
        for x in 0..t {
            for y in 0..t {
                if x != y {
                    m = m.max(counts[x * t + y]);
                }
            }
        }
        if i == 1 {
            let first = counts[1];
            balanced = (0..t)
                .flat_map(|x| (0..t).map(move |y| (x, y)))
                .filter(|(x, y)| x != y)
                .all(|(x, y)| counts[x * t + y] == first);
        }
        max_per_distance.push(m);
    }
    let max_k = max_per_distance
        .iter()
        .take_while(|&&m| m <= threshold)
        .count();
    Ok(BalanceReport {
        n,
        t,
        threshold,
        roman: max_k >= 1 || t == 1,
        vatican: max_k == t - 1,
        max_k,
        max_per_distance,
        balanced,
    })
}

/// `L(a)`: the row for `g` is `g·a`, rows in element-index order.
pub fn latin_square_of(arrangement: &Arrangement) -> Design {
    let g = arrangement.group();
    let rows = g
        .elements()
        .map(|h| arrangement.left_translate(h).as_slice().to_vec())
        .collect();
    Design {
        treatments: g.order(),
        rows,
    }
}

/// `L(a_1)` stacked on `L(a_2)` and so on.
pub fn design_from_tuple(family: &TupleFamily) -> Design {
    let mut rows = Vec::with_capacity(family.fold() * family.group().order());
    for m in family.members() {
        rows.extend(latin_square_of(m).rows);
    }
    Design {
        treatments: family.group().order(),
        rows,
    }
}

/// `c_i` copies of each design, in the order given.
pub fn stack_designs(parts: &[(&Design, usize)]) -> Result<Design> {
    let t = parts
        .first()
        .map(|(d, _)| d.treatments())
        .ok_or_else(|| Error::StackMismatch("nothing to stack".into()))?;
    if let Some((d, _)) = parts.iter().find(|(d, _)| d.treatments() != t) {
        return Err(Error::StackMismatch(format!(
            "treatment counts {t} and {} differ",
            d.treatments()
        )));
    }
    if parts.iter().all(|(_, c)| *c == 0) {
        return Err(Error::StackMismatch("all multiplicities are zero".into()));
    }
    let mut rows = Vec::new();
    for (d, copies) in parts {
        for _ in 0..*copies {
            rows.extend(d.rows.iter().cloned());
        }
    }
    Ok(Design {
        treatments: t,
        rows,
    })
}

/// Whether the triangle-level `k` of a family equals the design-level `k`.
pub fn cross_check(family: &TupleFamily) -> Result<bool> {
    let report = balance_report(&design_from_tuple(family))?;
    Ok(report.max_k == crate::triangle::roman_k(family))
}
