//! Embedded reference tables and the machinery to recompute them.
//!
//! The reference values are published benchmark data for the quartic and
//! sextic anharmonic oscillators on the line and for the pure-power
//! P-numbers feeding them. They are stored verbatim as printed, each cell
//! tagged with whether independent computation reproduces it; one exact-
//! column cell is known to be misprinted (its recomputed value is kept
//! alongside) and is flagged rather than failed when tables are checked.

use serde::Serialize;

use crate::anharmonic::{self, AnharmonicModel};
use crate::error::{Error, Result};
use crate::pnumbers::{self, PCache};
use crate::radial;
use crate::types::{PotentialSpec, PotentialTerm, SolverConfig, StateIndex};

/// One published value, verbatim, plus its reproducibility tag.
#[derive(Debug, Clone, Copy)]
pub struct RefValue {
    pub printed: &'static str,
    /// False for cells independent recomputation contradicts.
    pub reproducible: bool,
    /// Independently recomputed value for flagged cells.
    pub corrected: Option<f64>,
}

const fn val(printed: &'static str) -> RefValue {
    RefValue { printed, reproducible: true, corrected: None }
}

impl RefValue {
    pub fn value(&self) -> f64 {
        self.printed.parse().expect("reference values parse as f64")
    }

    /// Decimal places of the printed figure, for mirrored formatting.
    pub fn decimals(&self) -> usize {
        self.printed.split('.').nth(1).map_or(0, |s| s.len())
    }
}

/// Ground-state P-numbers of -d^2/dr^2 + r^{2m} and beta = P^{2m}.
#[derive(Debug, Clone, Copy)]
pub struct PNumberRow {
    pub m: u32,
    pub p: RefValue,
    pub beta: RefValue,
}

pub const TABLE_1: [PNumberRow; 5] = [
    PNumberRow { m: 2, p: val("0.6482831016477214"), beta: val("0.1766276965309679") },
    PNumberRow { m: 3, p: val("0.7522132877297533"), beta: val("0.1811531980432237") },
    PNumberRow { m: 4, p: val("0.8306928794474723"), beta: val("0.2267377863490461") },
    PNumberRow { m: 5, p: val("0.8927469751677408"), beta: val("0.3215761813712828") },
    PNumberRow { m: 6, p: val("0.9434071878408251"), beta: val("0.4970386601133180") },
];

/// One row of the anharmonic benchmark tables: ground-state energy of
/// -d^2/dr^2 + r^2 + lambda r^{2m} with its bounds and the two comparison
/// columns.
#[derive(Debug, Clone, Copy)]
pub struct AnharmonicRow {
    pub lambda: &'static str,
    pub exact: RefValue,
    pub lower: RefValue,
    pub upper: RefValue,
    pub e_b: RefValue,
    pub e_l: RefValue,
}

pub const TABLE_2_QUARTIC: [AnharmonicRow; 11] = [
    AnharmonicRow { lambda: "0.001", exact: val("1.00075"), lower: val("1.00062"), upper: val("1.00075"), e_b: val("1.00079"), e_l: val("1.00071") },
    AnharmonicRow { lambda: "0.01", exact: val("1.00737"), lower: val("1.00614"), upper: val("1.00739"), e_b: val("1.00783"), e_l: val("1.00697") },
    AnharmonicRow { lambda: "0.1", exact: val("1.06529"), lower: val("1.05585"), upper: val("1.06620"), e_b: val("1.07005"), e_l: val("1.06275") },
    AnharmonicRow { lambda: "0.2", exact: val("1.11829"), lower: val("1.10288"), upper: val("1.12062"), e_b: val("1.12702"), e_l: val("1.11473") },
    AnharmonicRow { lambda: "1.0", exact: val("1.39235"), lower: val("1.35510"), upper: val("1.40332"), e_b: val("1.41155"), e_l: val("1.38754") },
    AnharmonicRow { lambda: "4.0", exact: val("1.90314"), lower: val("1.83699"), upper: val("1.92881"), e_b: val("1.91489"), e_l: val("1.89895") },
    AnharmonicRow { lambda: "10.0", exact: val("2.44917"), lower: val("2.35648"), upper: val("2.48862"), e_b: val("2.45005"), e_l: val("2.44575") },
    AnharmonicRow { lambda: "50.0", exact: val("4.00399"), lower: val("3.841639"), upper: val("4.078522"), e_b: val("3.99621"), e_l: val("4.00182") },
    AnharmonicRow { lambda: "100.0", exact: val("4.99942"), lower: val("4.79395"), upper: val("5.09516"), e_b: val("4.99161"), e_l: val("4.99766") },
    AnharmonicRow { lambda: "1000.0", exact: val("10.63979"), lower: val("10.19449"), upper: val("10.85151"), e_b: val("10.63521"), e_l: val("10.63896") },
    AnharmonicRow { lambda: "2000.0", exact: val("13.38844"), lower: val("12.82706"), upper: val("13.65591"), e_b: val("13.38474"), e_l: val("13.38778") },
];

pub const TABLE_3_SEXTIC: [AnharmonicRow; 11] = [
    AnharmonicRow { lambda: "0.001", exact: val("1.00185"), lower: val("1.000932"), upper: val("1.001859"), e_b: val("1.00143"), e_l: val("1.00144") },
    AnharmonicRow { lambda: "0.01", exact: val("1.01674"), lower: val("1.008994"), upper: val("1.017387"), e_b: val("1.01374"), e_l: val("1.01366") },
    AnharmonicRow { lambda: "0.1", exact: val("1.10908"), lower: val("1.070681"), upper: val("1.119935"), e_b: val("1.10565"), e_l: val("1.09920") },
    AnharmonicRow { lambda: "0.2", exact: val("1.17389"), lower: val("1.119782"), upper: val("1.192805"), e_b: val("1.17513"), e_l: val("1.16261") },
    // The printed ground energy at lambda = 1 disagrees with independent
    // recomputation by three orders of magnitude more than every other cell
    // (digit transposition); the corrected value is carried alongside.
    AnharmonicRow {
        lambda: "1.0",
        exact: RefValue { printed: "1.43653", reproducible: false, corrected: Some(1.435624619) },
        lower: val("1.334560"),
        upper: val("1.484050"),
        e_b: val("1.44870"),
        e_l: val("1.42400"),
    },
    AnharmonicRow { lambda: "4.0", exact: val("1.83044"), lower: val("1.675050"), upper: val("1.916177"), e_b: val("1.83193"), e_l: val("1.82058") },
    AnharmonicRow { lambda: "10.0", exact: val("2.20572"), lower: val("2.004582"), upper: val("2.322916"), e_b: val("2.19235"), e_l: val("2.19734") },
    AnharmonicRow { lambda: "50.0", exact: val("3.15902"), lower: val("2.850163"), upper: val("3.348809"), e_b: val("3.13471"), e_l: val("3.15304") },
    AnharmonicRow { lambda: "100.0", exact: val("3.71698"), lower: val("3.347427"), upper: val("3.946987"), e_b: val("3.69348"), e_l: val("3.71187") },
    AnharmonicRow { lambda: "1000.0", exact: val("6.49235"), lower: val("5.828630"), upper: val("6.914382"), e_b: val("6.47694"), e_l: val("6.48941") },
    AnharmonicRow { lambda: "2000.0", exact: val("7.70174"), lower: val("6.911387"), upper: val("8.205757"), e_b: val("7.68861"), e_l: val("7.69925") },
];

/// Text anchors accompanying the tables (quartic, lambda = 0.01, d = 1).
pub mod anchors {
    /// Published extremal-P lower bound.
    pub const QUARTIC_001_LOWER_A: f64 = 1.00248;
    /// Published exact ground energy.
    pub const QUARTIC_001_EXACT: f64 = 1.00737;
    /// Published extremal-P upper bound; independent recomputation of the
    /// same formula does not reproduce this figure.
    pub const QUARTIC_001_UPPER_A_PUBLISHED_UNREPRODUCED: f64 = 1.32038;
    /// Brute-force value of that upper bound (minimizing the objective with
    /// the quartic P on both terms), kept as the working reference.
    pub const QUARTIC_001_UPPER_A_DERIVED: f64 = 1.30074201499582;
}

/// Which table to reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    PNumbers,
    Quartic,
    Sextic,
}

impl TableId {
    pub fn from_index(i: u32) -> Result<Self> {
        match i {
            1 => Ok(TableId::PNumbers),
            2 => Ok(TableId::Quartic),
            3 => Ok(TableId::Sextic),
            _ => Err(Error::Domain(format!("no reference table {i}; valid: 1, 2, 3"))),
        }
    }

    /// Default comparison tolerance and whether it is relative.
    pub fn default_tolerance(self) -> (f64, bool) {
        match self {
            TableId::PNumbers => (1e-5, true),
            TableId::Quartic | TableId::Sextic => (2e-4, false),
        }
    }
}

/// One recomputed cell next to its reference.
#[derive(Debug, Clone, Serialize)]
pub struct CellCheck {
    pub column: &'static str,
    pub reference: f64,
    pub computed: f64,
    pub diff: f64,
    pub within_tol: bool,
    /// Known-unreproducible published cell: reported, never failed.
    pub flagged: bool,
    /// Printed decimal places, so output can mirror the reference layout.
    pub decimals: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub label: String,
    pub cells: Vec<CellCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRun {
    pub table: u32,
    pub tolerance: f64,
    pub relative: bool,
    pub rows: Vec<RowCheck>,
    /// True iff every unflagged cell is within tolerance.
    pub passed: bool,
}

fn check_cell(
    column: &'static str,
    reference: &RefValue,
    computed: f64,
    tol: f64,
    relative: bool,
) -> CellCheck {
    let refv = reference.value();
    let diff = computed - refv;
    let scale = if relative { refv.abs().max(f64::MIN_POSITIVE) } else { 1.0 };
    CellCheck {
        column,
        reference: refv,
        computed,
        diff,
        within_tol: diff.abs() <= tol * scale,
        flagged: !reference.reproducible,
        decimals: reference.decimals(),
    }
}

fn run_passed(rows: &[RowCheck]) -> bool {
    rows.iter()
        .flat_map(|r| &r.cells)
        .all(|c| c.within_tol || c.flagged)
}

/// Recompute a reference table and diff it cell by cell.
pub fn reproduce(
    table: TableId,
    cfg: &SolverConfig,
    cache: &mut PCache,
    tolerance: Option<f64>,
) -> Result<TableRun> {
    let (default_tol, relative) = table.default_tolerance();
    let tol = tolerance.unwrap_or(default_tol);
    let rows = match table {
        TableId::PNumbers => reproduce_pnumbers(cfg, cache, tol)?,
        TableId::Quartic => reproduce_anharmonic(&TABLE_2_QUARTIC, 2, cfg, cache, tol)?,
        TableId::Sextic => reproduce_anharmonic(&TABLE_3_SEXTIC, 3, cfg, cache, tol)?,
    };
    let passed = run_passed(&rows);
    Ok(TableRun {
        table: match table {
            TableId::PNumbers => 1,
            TableId::Quartic => 2,
            TableId::Sextic => 3,
        },
        tolerance: tol,
        relative,
        rows,
        passed,
    })
}

fn reproduce_pnumbers(cfg: &SolverConfig, cache: &mut PCache, tol: f64) -> Result<Vec<RowCheck>> {
    let ground = StateIndex::new(1, 0, 1)?;
    TABLE_1
        .iter()
        .map(|row| {
            let rec = pnumbers::p_lookup(2.0 * row.m as f64, ground, cfg, cache)?;
            let beta = rec.p.powi(2 * row.m as i32);
            Ok(RowCheck {
                label: format!("m={}", row.m),
                cells: vec![
                    check_cell("P", &row.p, rec.p, tol, true),
                    check_cell("beta", &row.beta, beta, tol, true),
                ],
            })
        })
        .collect()
}

fn reproduce_anharmonic(
    rows: &[AnharmonicRow],
    m: u32,
    cfg: &SolverConfig,
    cache: &mut PCache,
    tol: f64,
) -> Result<Vec<RowCheck>> {
    let ground = StateIndex::new(1, 0, 1)?;
    let q = 2.0 * m as f64;
    let k0 = anharmonic::default_k0(m)
        .ok_or_else(|| Error::Domain(format!("no built-in comparison constant for m={m}")))?;

    let alpha_exact = pnumbers::p_harmonic(ground).powi(2);
    let p_numeric = pnumbers::p_lookup(q, ground, cfg, cache)?.p;
    let beta_numeric = p_numeric.powi(2 * m as i32);
    let p_glo = pnumbers::p_gamma_lower(q, 1)?;
    let p_gup = pnumbers::p_gamma_upper(q, 1)?;
    let alpha_glo = pnumbers::p_gamma_lower(2.0, 1)?.powi(2);
    let alpha_gup = pnumbers::p_gamma_upper(2.0, 1)?.powi(2);

    let model_lower = AnharmonicModel::new(m, alpha_glo, p_glo.powi(2 * m as i32))?;
    let model_upper = AnharmonicModel::new(m, alpha_gup, p_gup.powi(2 * m as i32))?;
    let model_mixed = AnharmonicModel::new(m, alpha_exact, beta_numeric)?;

    rows.iter()
        .map(|row| {
            let lambda: f64 = row.lambda.parse().expect("lambda parses");
            let pot = PotentialSpec::new(
                1,
                vec![PotentialTerm { a: 1.0, q: 2.0 }, PotentialTerm { a: lambda, q }],
            )?;
            let exact = radial::eigenvalue(&pot, ground, cfg)?;
            let lower = anharmonic::energy_of_lambda(lambda, &model_lower)?;
            let upper = anharmonic::energy_of_lambda(lambda, &model_upper)?;
            let e_b = anharmonic::bhattacharya_energy(lambda, m, k0)?;
            let e_l = anharmonic::energy_of_lambda(lambda, &model_mixed)?;
            Ok(RowCheck {
                label: format!("lambda={}", row.lambda),
                cells: vec![
                    check_cell("exact", &row.exact, exact, tol, false),
                    check_cell("lower", &row.lower, lower, tol, false),
                    check_cell("upper", &row.upper, upper, tol, false),
                    check_cell("E_b", &row.e_b, e_b, tol, false),
                    check_cell("E_L", &row.e_l, e_l, tol, false),
                ],
            })
        })
        .collect()
}
