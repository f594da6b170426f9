//! The specialness criterion and the exhaustive classification search.
//!
//! A family with `N >= 4` branch points sweeps out an `(N-3)`-dimensional
//! image inside the moduli space of abelian varieties. That image sits
//! inside the Shimura subvariety of abelian varieties with the given
//! `Z/m`-action, whose dimension is determined by the eigenspace dimensions:
//!
//! ```text
//!   dim = sum_{1 <= n < m-n} d_n * d_{m-n}   (unitary factor per pair {n, m-n})
//!       + d_{m/2} * (d_{m/2} + 1) / 2        (symplectic factor, m even)
//! ```
//!
//! The family is special exactly when the two dimensions agree; the
//! inequality `dim >= N - 3` holds for every valid datum. The search
//! enumerates monodromy data up to equivalence and reports the classes
//! attaining equality: twenty, stably across search boxes.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd;
use crate::monodromy::{EigenspaceSignature, MonodromyDatum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("family with N = 3 branch points is zero-dimensional (a CM point), excluded from the classification")]
    ZeroDimensionalFamily,
    #[error("invalid search bounds: require m_max >= 2 and n_max >= 4 (got m_max = {m_max}, n_max = {n_max})")]
    InvalidBounds { m_max: u64, n_max: usize },
    #[error("unknown report format {0:?}, expected table, json, or csv")]
    UnknownFormat(String),
}

/// Search box for the classification: `2 <= m <= m_max`, `4 <= N <= n_max`,
/// optional genus cap applied after genus computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    m_max: u64,
    n_max: usize,
    genus_max: Option<u64>,
}

impl SearchBounds {
    pub fn new(m_max: u64, n_max: usize, genus_max: Option<u64>) -> Result<Self, SpecialError> {
        if m_max < 2 || n_max < 4 {
            return Err(SpecialError::InvalidBounds { m_max, n_max });
        }
        Ok(SearchBounds { m_max, n_max, genus_max })
    }

    pub fn m_max(&self) -> u64 {
        self.m_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn genus_max(&self) -> Option<u64> {
        self.genus_max
    }
}

/// Dimension contribution of one character pair `{n, m-n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairContribution {
    pub n: u64,
    pub partner: u64,
    pub contribution: u64,
}

/// Verdict of the criterion for one datum, computed on the canonical
/// representative of its equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialnessReport {
    pub datum: MonodromyDatum,
    pub signature: EigenspaceSignature,
    pub contributions: Vec<PairContribution>,
    pub shimura_dim: u64,
    pub family_dim: u64,
    pub special: bool,
}

/// Dimension of the product of Hermitian symmetric domains attached to the
/// eigenspace pairs: `sum_{n < m-n} d_n d_{m-n}`, plus the symplectic term
/// `d_{m/2}(d_{m/2}+1)/2` when `m` is even.
pub fn shimura_dim(sig: &EigenspaceSignature) -> u64 {
    pair_contributions(sig).iter().map(|c| c.contribution).sum()
}

/// Per-pair breakdown of [`shimura_dim`], in ascending order of `n`.
pub fn pair_contributions(sig: &EigenspaceSignature) -> Vec<PairContribution> {
    let m = sig.m();
    let mut out = Vec::new();
    for n in 1..m {
        let partner = m - n;
        if n < partner {
            out.push(PairContribution {
                n,
                partner,
                contribution: sig.dim(n) * sig.dim(partner),
            });
        } else if n == partner {
            let d = sig.dim(n);
            out.push(PairContribution {
                n,
                partner,
                contribution: d * (d + 1) / 2,
            });
        }
    }
    out
}

/// Apply the criterion to one datum. The report is computed on the
/// canonical form, so equivalent data yield identical reports.
pub fn is_special(datum: &MonodromyDatum) -> Result<SpecialnessReport, SpecialError> {
    if datum.is_zero_dimensional() {
        return Err(SpecialError::ZeroDimensionalFamily);
    }
    let canonical = datum.normalize();
    let signature = canonical.eigenspace_dims();
    let contributions = pair_contributions(&signature);
    let shimura_dim: u64 = contributions.iter().map(|c| c.contribution).sum();
    let family_dim = canonical.branch_count() as u64 - 3;
    Ok(SpecialnessReport {
        special: shimura_dim == family_dim,
        datum: canonical,
        signature,
        contributions,
        shimura_dim,
        family_dim,
    })
}

/// All special families in the box, one canonical representative per
/// equivalence class, sorted by (genus, m, N, a).
///
/// The outer `m`-loop is sharded across worker threads; each shard is an
/// independent scan over read-only state, and the merge is a deterministic
/// set union, so the result does not depend on the thread count.
pub fn enumerate_special(bounds: &SearchBounds) -> Vec<SpecialnessReport> {
    let hits: BTreeSet<MonodromyDatum> = (2..=bounds.m_max)
        .into_par_iter()
        .map(|m| scan_modulus(m, bounds.n_max))
        .reduce(BTreeSet::new, |mut acc, part| {
            acc.extend(part);
            acc
        });

    let mut reports: Vec<SpecialnessReport> = hits
        .into_iter()
        .map(|d| is_special(&d).expect("search box starts at N = 4"))
        .filter(|r| {
            bounds
                .genus_max
                .is_none_or(|cap| r.signature.genus() <= cap)
        })
        .collect();
    reports.sort_by_key(|r| {
        (
            r.signature.genus(),
            r.datum.m(),
            r.datum.branch_count(),
            r.datum.local_monodromies().to_vec(),
        )
    });
    debug_assert!(reports.iter().all(|r| r.special));
    reports
}

/// Scan one covering-group order for special data, returning canonical
/// forms.
///
/// For `m >= 3` the pair `{1, m-1}` has `d_1 + d_{m-1} = N - 2`, so its
/// product already exceeds `N - 3` unless `min(d_1, d_{m-1}) <= 1`.
/// Replacing `a` by `-a` (the unit `m-1`) swaps `d_1` and `d_{m-1}`, so
/// every special class has a representative with `d_1 <= 1`, i.e. with
/// `sum a_i` equal to `m` or `2m`. Enumerating those two slice sums per
/// `(m, N)` therefore finds every class; a brute-force cross-check of this
/// pruning lives in the test suite.
fn scan_modulus(m: u64, n_max: usize) -> BTreeSet<MonodromyDatum> {
    let mut hits = BTreeSet::new();
    if m == 2 {
        // Only all-ones data exist: d_1 = N/2 - 1, criterion
        // d_1 (d_1 + 1) / 2 = N - 3.
        for n in (4..=n_max).step_by(2) {
            let d1 = (n as u64) / 2 - 1;
            if d1 * (d1 + 1) / 2 == n as u64 - 3 {
                hits.insert(MonodromyDatum::new_unchecked(2, vec![1; n]));
            }
        }
        return hits;
    }

    // residue_table[v][n-1] = v * n mod m
    let residue_table: Vec<Vec<u64>> = (0..m)
        .map(|v| (1..m).map(|n| v * n % m).collect())
        .collect();

    for n in 4..=n_max {
        for target in [m, 2 * m] {
            if (target as usize) < n || target > n as u64 * (m - 1) {
                continue;
            }
            let mut residue_sums = vec![0u64; (m - 1) as usize];
            let mut entries = Vec::with_capacity(n);
            scan_partitions(
                m,
                n,
                target,
                1,
                m,
                &residue_table,
                &mut residue_sums,
                &mut entries,
                &mut hits,
            );
        }
    }
    hits
}

/// Enumerate non-decreasing sequences of length `slots` with entries in
/// `[min_v, m-1]` summing to `remaining`, maintaining the per-character
/// residue sums incrementally; test the criterion at each leaf.
#[allow(clippy::too_many_arguments)]
fn scan_partitions(
    m: u64,
    slots: usize,
    remaining: u64,
    min_v: u64,
    gcd_acc: u64,
    residue_table: &[Vec<u64>],
    residue_sums: &mut [u64],
    entries: &mut Vec<u64>,
    hits: &mut BTreeSet<MonodromyDatum>,
) {
    if slots == 0 {
        if remaining == 0 && gcd_acc == 1 {
            check_leaf(m, residue_sums, entries, hits);
        }
        return;
    }
    let k = slots as u64;
    // later entries are >= v, so k*v <= remaining must stay feasible
    let hi = (remaining / k).min(m - 1);
    for v in min_v..=hi {
        if remaining - v > (k - 1) * (m - 1) {
            continue;
        }
        entries.push(v);
        let row = &residue_table[v as usize];
        for (sum, r) in residue_sums.iter_mut().zip(row) {
            *sum += r;
        }
        // residue sums only grow, so ceil(R_n/m) - 1 bounds the final d_n
        // from below; once the pair products alone exceed N - 3 no
        // completion can reach equality
        if entries.len() < 4 || !pair_lower_bound_exceeds(m, residue_sums, entries.len() + slots - 1) {
            scan_partitions(
                m,
                slots - 1,
                remaining - v,
                v,
                gcd(gcd_acc, v),
                residue_table,
                residue_sums,
                entries,
                hits,
            );
        }
        for (sum, r) in residue_sums.iter_mut().zip(row) {
            *sum -= r;
        }
        entries.pop();
    }
}

fn pair_lower_bound_exceeds(m: u64, residue_sums: &[u64], n_total: usize) -> bool {
    let family_dim = n_total as u64 - 3;
    let lb = |n: u64| -> u64 { residue_sums[(n - 1) as usize].div_ceil(m).saturating_sub(1) };
    let mut total = 0u64;
    for n in 1..=m / 2 {
        let partner = m - n;
        let d = lb(n);
        if d == 0 {
            continue;
        }
        total += if n < partner { d * lb(partner) } else { d * (d + 1) / 2 };
        if total > family_dim {
            return true;
        }
    }
    false
}

fn check_leaf(m: u64, residue_sums: &[u64], entries: &[u64], hits: &mut BTreeSet<MonodromyDatum>) {
    let family_dim = entries.len() as u64 - 3;
    // d_n = residue_sums[n-1] / m - 1; the division is exact because the
    // total monodromy is trivial.
    let dim_of = |n: u64| -> u64 {
        let s = residue_sums[(n - 1) as usize];
        debug_assert_eq!(s % m, 0);
        s / m - 1
    };
    let mut total = 0u64;
    for n in 1..m {
        let partner = m - n;
        if n > partner {
            break;
        }
        let d = dim_of(n);
        total += if n < partner {
            d * dim_of(partner)
        } else {
            d * (d + 1) / 2
        };
        if total > family_dim {
            return;
        }
    }
    if total == family_dim {
        let datum = MonodromyDatum::new_unchecked(m, entries.to_vec());
        hits.insert(datum.normalize());
    }
}

/// Output format for [`classification_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = SpecialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(SpecialError::UnknownFormat(other.to_string())),
        }
    }
}

/// One row of the machine-readable classification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub m: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub a: Vec<u64>,
    pub genus: u64,
    pub d: Vec<u64>,
    pub shimura_dim: u64,
    pub family_dim: u64,
    pub special: bool,
}

impl ClassificationRow {
    pub fn from_report(r: &SpecialnessReport) -> Self {
        ClassificationRow {
            m: r.datum.m(),
            n: r.datum.branch_count(),
            a: r.datum.local_monodromies().to_vec(),
            genus: r.signature.genus(),
            d: r.signature.dims().to_vec(),
            shimura_dim: r.shimura_dim,
            family_dim: r.family_dim,
            special: r.special,
        }
    }
}

/// Run the search and render the result. Output is a pure function of the
/// bounds and format: byte-identical across runs.
pub fn classification_report(bounds: &SearchBounds, format: ReportFormat) -> String {
    render_report(&enumerate_special(bounds), format, Some(bounds))
}

/// Render reports in the requested format. `bounds` feeds the table banner;
/// pass `None` to suppress it (the CLI's `--plain`).
pub fn render_report(
    reports: &[SpecialnessReport],
    format: ReportFormat,
    bounds: Option<&SearchBounds>,
) -> String {
    let rows: Vec<ClassificationRow> = reports.iter().map(ClassificationRow::from_report).collect();
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("serializable rows");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut s = String::from("genus,m,N,a,d,shimura_dim\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},\"{}\",\"{}\",{}\n",
                    r.genus,
                    r.m,
                    r.n,
                    join(&r.a),
                    join(&r.d),
                    r.shimura_dim
                ));
            }
            s
        }
        ReportFormat::Table => {
            let mut s = String::new();
            if let Some(b) = bounds {
                s.push_str(&format!(
                    "special cyclic-cover families in the box m <= {}, N <= {}{}: {} classes\n",
                    b.m_max,
                    b.n_max,
                    b.genus_max
                        .map_or(String::new(), |g| format!(", genus <= {g}")),
                    rows.len()
                ));
            }
            let header = ["genus", "m", "N", "a", "d", "shimura_dim"];
            let mut table: Vec<[String; 6]> = vec![header.map(String::from)];
            for r in &rows {
                table.push([
                    r.genus.to_string(),
                    r.m.to_string(),
                    r.n.to_string(),
                    join(&r.a),
                    join(&r.d),
                    r.shimura_dim.to_string(),
                ]);
            }
            let widths: Vec<usize> = (0..6)
                .map(|c| table.iter().map(|row| row[c].len()).max().unwrap())
                .collect();
            for row in &table {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect();
                s.push_str(line.join("  ").trim_end());
                s.push('\n');
            }
            s
        }
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Recompute the dimension total with the opposite character convention
/// (`n <-> m-n`). The criterion consumes unordered pairs, so this always
/// equals [`shimura_dim`]; exposed for the convention-independence tests.
pub fn shimura_dim_opposite_convention(sig: &EigenspaceSignature) -> u64 {
    let m = sig.m();
    let flipped: Vec<u64> = (1..m).map(|n| sig.dim(m - n)).collect();
    shimura_dim(&EigenspaceSignature::from_dims(m, flipped))
}
