//! Flat records of scenario results, their delimited and JSON encodings,
//! the published table layouts and golden comparison.
//!
//! Record units: shocks and hats in percent, shares in percent, welfare in
//! million dollars, capital stocks, profit and transfer in billion dollars.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::competition::CompetitionIndex;
use crate::displacement::Endogenous;
use crate::economy::{DerivedParameters, MILLION_PER_BILLION};
use crate::error::{Error, Result};
use crate::calibration::{calibrate, CalibrationOptions};
use crate::economy::CanonicalEconomy;
use crate::policy::{self, Constraint, ScenarioResult};
use crate::shock::Instrument;
use crate::tolerance;

/// A numeric cell, or one of the two non-numeric markers the tables use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Number(f64),
    Infinite,
    /// Printed as `n/a`.
    Undefined,
}

impl Cell {
    pub fn number(self) -> Option<f64> {
        match self {
            Cell::Number(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Number(v) => write!(f, "{v}"),
            Cell::Infinite => f.write_str("inf"),
            Cell::Undefined => f.write_str("n/a"),
        }
    }
}

impl FromStr for Cell {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(Cell::Infinite),
            "n/a" => Ok(Cell::Undefined),
            t => t
                .parse::<f64>()
                .map(Cell::Number)
                .map_err(|_| Error::Parse(format!("bad cell `{t}`"))),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Number(v) => s.serialize_f64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Cell::Number(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Shock,
    Param,
    Hat,
    Welfare,
    SixTerm,
}

impl Section {
    fn name(self) -> &'static str {
        match self {
            Section::Shock => "shock",
            Section::Param => "param",
            Section::Hat => "hat",
            Section::Welfare => "welfare",
            Section::SixTerm => "six_term",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub section: Section,
    pub quantity: String,
    pub case: String,
    pub value: Cell,
    /// Set by the policy design rather than computed: imposed shocks,
    /// overridden parameters and constrained outputs.
    #[serde(default)]
    pub exogenous: bool,
}

impl Record {
    fn new(section: Section, quantity: &str, case: &str, value: Cell) -> Self {
        Record {
            section,
            quantity: quantity.to_string(),
            case: case.to_string(),
            value,
            exogenous: false,
        }
    }

    pub fn key(&self) -> (Section, &str, &str) {
        (self.section, &self.quantity, &self.case)
    }
}

const PCT: f64 = 100.0;

/// Derived-parameter records for one calibration.
pub fn calibration_records(p: &DerivedParameters, case: &str) -> Vec<Record> {
    let e = &p.economy;
    let n = match p.competition {
        CompetitionIndex::Infinite => Cell::Infinite,
        CompetitionIndex::Finite(n) => Cell::Number(n),
    };
    let num = |q: &str, v: f64| Record::new(Section::Param, q, case, Cell::Number(v));
    vec![
        num("gamma", p.gamma),
        num("delta", e.distribution_cost),
        num("sigma_E", p.energy_substitution),
        Record::new(Section::Param, "n", case, n),
        num("eps_ER", p.residential_elasticity),
        num("eps_EX", p.industrial_elasticity),
        num("sigma_U", p.utility_substitution),
        num("sigma_X", p.industrial_substitution),
        num("omega_E", PCT * p.energy_capital_share),
        num("phi_R", PCT * p.residential_share),
        num("phi_X", PCT * p.industrial_share),
        num("theta_ER", PCT * p.residential_budget_share),
        num("theta_EX", PCT * p.industrial_energy_share),
        num("rho_Z", PCT * p.emission_cost_share),
        num("K_E", p.energy_capital / MILLION_PER_BILLION),
        num("K_X", p.industrial_capital / MILLION_PER_BILLION),
        num("Pi_E", p.profit / MILLION_PER_BILLION),
        num("T", p.transfer / MILLION_PER_BILLION),
    ]
}

fn overridden(r: &ScenarioResult) -> Vec<&'static str> {
    let o = &r.overrides;
    let mut v = Vec::new();
    if o.gamma.is_some() {
        v.push("gamma");
    }
    if o.sigma_e.is_some() {
        v.push("sigma_E");
    }
    if o.eps_er.is_some() {
        v.push("eps_ER");
    }
    match o.mode {
        Some(crate::calibration::CalibrationMode::ForceMonopoly) => v.push("n"),
        Some(crate::calibration::CalibrationMode::ForcePerfectCompetition) => {
            v.extend(["n", "gamma"])
        }
        _ => {}
    }
    v
}

/// All records of one scenario, at full precision.
pub fn scenario_records(r: &ScenarioResult) -> Vec<Record> {
    let case = r.label.as_str();
    let mut out = Vec::new();
    for i in Instrument::ALL {
        let v = PCT * r.shock.get(i);
        let mut rec = Record::new(Section::Shock, i.symbol(), case, Cell::Number(v));
        rec.exogenous = v != 0.0;
        out.push(rec);
    }
    let exo = overridden(r);
    for mut rec in calibration_records(&r.params, case) {
        rec.exogenous = exo.contains(&rec.quantity.as_str());
        out.push(rec);
    }
    let constrained = |q: &str| {
        r.constraints.iter().any(|c| match c {
            Constraint::BalancedBudget => q == "T",
            Constraint::Emissions(_) => q == "Z",
        })
    };
    let d = &r.displacement;
    for v in Endogenous::ALL {
        let mut rec = Record::new(Section::Hat, v.symbol(), case, Cell::Number(PCT * d.get(v)));
        rec.exogenous = constrained(v.symbol());
        out.push(rec);
    }
    out.push(Record::new(
        Section::Hat,
        "Pi_E",
        case,
        d.profit.map_or(Cell::Undefined, |v| Cell::Number(PCT * v)),
    ));
    let mut t = Record::new(Section::Hat, "T", case, Cell::Number(PCT * d.transfer));
    t.exogenous = constrained("T");
    out.push(t);
    let w = &r.welfare;
    for (q, v) in [
        ("total", w.total),
        ("oligopoly_output", w.three_term.oligopoly_output),
        ("price_discrimination", w.three_term.price_discrimination),
        ("externality", w.three_term.externality),
        ("market_power", w.two_term.market_power),
    ] {
        out.push(Record::new(Section::Welfare, q, case, Cell::Number(v)));
    }
    for (k, v) in w.six_term.w.iter().enumerate() {
        out.push(Record::new(Section::SixTerm, &format!("W{}", k + 1), case, Cell::Number(*v)));
    }
    out
}

pub fn write_delimited(records: &[Record]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["section", "quantity", "case", "value", "exogenous"])
        .map_err(|e| Error::Parse(e.to_string()))?;
    for r in records {
        w.write_record([
            r.section.name(),
            &r.quantity,
            &r.case,
            &r.value.to_string(),
            if r.exogenous { "1" } else { "0" },
        ])
        .map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads delimited records; `#` starts a comment line and the
/// `exogenous` column is optional.
pub fn read_delimited(text: &str) -> Result<Vec<Record>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(s), Some(q), Some(c), Some(v)) = (col("section"), col("quantity"), col("case"), col("value")) else {
        return Err(Error::Parse("missing section/quantity/case/value header".into()));
    };
    let x = col("exogenous");
    let mut out = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let field = |k: usize| {
            row.get(k)
                .ok_or_else(|| Error::Parse(format!("record {}: missing field {k}", line + 1)))
        };
        let section = match field(s)? {
            "shock" => Section::Shock,
            "param" => Section::Param,
            "hat" => Section::Hat,
            "welfare" => Section::Welfare,
            "six_term" => Section::SixTerm,
            other => return Err(Error::Parse(format!("record {}: unknown section `{other}`", line + 1))),
        };
        out.push(Record {
            section,
            quantity: field(q)?.to_string(),
            case: field(c)?.to_string(),
            value: field(v)?.parse()?,
            exogenous: x.and_then(|k| row.get(k)).is_some_and(|f| f == "1"),
        });
    }
    Ok(out)
}

pub fn write_json_lines(records: &[Record]) -> Result<String> {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).map_err(|e| Error::Parse(e.to_string()))?);
        s.push('\n');
    }
    Ok(s)
}

pub fn read_json_lines(text: &str) -> Result<Vec<Record>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

/// Rounds half away from zero and formats with `places` decimals.
pub fn round_half_away(v: f64, places: usize) -> String {
    let m = 10f64.powi(places as i32);
    let r = (v * m).round() / m;
    format!("{r:.places$}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub percent: usize,
    pub money: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { percent: 2, money: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    Percent,
    Money,
    Param,
}

struct Row {
    section: Section,
    quantity: &'static str,
    label: &'static str,
    unit: Unit,
}

const fn row(section: Section, quantity: &'static str, label: &'static str, unit: Unit) -> Row {
    Row { section, quantity, label, unit }
}

const SHOCKS_ALL: [Row; 4] = [
    row(Section::Shock, "t_Z", "t̂_Z", Unit::Percent),
    row(Section::Shock, "t_ER", "t̂_ER", Unit::Percent),
    row(Section::Shock, "t_EX", "t̂_EX", Unit::Percent),
    row(Section::Shock, "t_KE", "t̂_KE", Unit::Percent),
];
const SHOCKS_STRUCTURAL: [Row; 3] = [
    row(Section::Shock, "t_Z", "t̂_Z", Unit::Percent),
    row(Section::Shock, "t_EX", "t̂_EX", Unit::Percent),
    row(Section::Shock, "t_KE", "t̂_KE", Unit::Percent),
];
const PARAMS: [Row; 5] = [
    row(Section::Param, "gamma", "γ", Unit::Param),
    row(Section::Param, "sigma_E", "σ_E", Unit::Param),
    row(Section::Param, "n", "n", Unit::Param),
    row(Section::Param, "eps_ER", "ε_ER", Unit::Param),
    row(Section::Param, "eps_EX", "ε_EX", Unit::Param),
];
const HATS: [Row; 13] = [
    row(Section::Hat, "gamma", "γ̂", Unit::Percent),
    row(Section::Hat, "p_EX", "p̂_EX", Unit::Percent),
    row(Section::Hat, "p_ER", "p̂_ER", Unit::Percent),
    row(Section::Hat, "p_X", "p̂_X", Unit::Percent),
    row(Section::Hat, "K_X", "K̂_X", Unit::Percent),
    row(Section::Hat, "K_E", "K̂_E", Unit::Percent),
    row(Section::Hat, "E", "Ê", Unit::Percent),
    row(Section::Hat, "E_R", "Ê_R", Unit::Percent),
    row(Section::Hat, "E_X", "Ê_X", Unit::Percent),
    row(Section::Hat, "X", "X̂", Unit::Percent),
    row(Section::Hat, "Z", "Ẑ", Unit::Percent),
    row(Section::Hat, "Pi_E", "Π̂_E", Unit::Percent),
    row(Section::Hat, "T", "T̂", Unit::Percent),
];
const WELFARE: [Row; 4] = [
    row(Section::Welfare, "total", "Total:", Unit::Money),
    row(Section::Welfare, "oligopoly_output", "Oligopoly Output:", Unit::Money),
    row(Section::Welfare, "price_discrimination", "Price Discrimination:", Unit::Money),
    row(Section::Welfare, "externality", "Externality:", Unit::Money),
];
const SIX_TERM: [Row; 7] = [
    row(Section::Welfare, "total", "Total:", Unit::Money),
    row(Section::SixTerm, "W1", "W1:", Unit::Money),
    row(Section::SixTerm, "W2", "W2:", Unit::Money),
    row(Section::SixTerm, "W3", "W3:", Unit::Money),
    row(Section::SixTerm, "W4", "W4:", Unit::Money),
    row(Section::SixTerm, "W5", "W5:", Unit::Money),
    row(Section::SixTerm, "W6", "W6:", Unit::Money),
];
const CALIBRATION: [Row; 14] = [
    row(Section::Param, "gamma", "γ", Unit::Param),
    row(Section::Param, "delta", "δ", Unit::Param),
    row(Section::Param, "K_E", "K_E ($B)", Unit::Money),
    row(Section::Param, "K_X", "K_X ($B)", Unit::Money),
    row(Section::Param, "omega_E", "ω_E (%)", Unit::Percent),
    row(Section::Param, "phi_R", "φ_R (%)", Unit::Percent),
    row(Section::Param, "phi_X", "φ_X (%)", Unit::Percent),
    row(Section::Param, "sigma_U", "σ_U", Unit::Param),
    row(Section::Param, "sigma_E", "σ_E", Unit::Param),
    row(Section::Param, "n", "n", Unit::Param),
    row(Section::Param, "eps_ER", "ε_ER", Unit::Param),
    row(Section::Param, "eps_EX", "ε_EX", Unit::Param),
    row(Section::Param, "sigma_X", "σ_X", Unit::Param),
    row(Section::Param, "Pi_E", "Π_E ($B)", Unit::Money),
];

type Panel = (&'static str, &'static [Row]);

fn layout(table: &str) -> Option<(&'static str, Vec<Panel>)> {
    Some(match table {
        "table-1" => ("Derived benchmark parameters", vec![("", &CALIBRATION[..])]),
        "table-2" => (
            "Emission Tax, Revenue Recycling, and Two-Part Instrument",
            vec![
                ("Panel A: Exogenous Policy Change (in percentage)", &SHOCKS_ALL[..]),
                ("Panel B: Closed-Form Solutions (in percent)", &HATS[..]),
                ("Panel C: Welfare Effects (in 2012$ million)", &WELFARE[..]),
            ],
        ),
        "table-3" => (
            "Parameter Sensitivity",
            vec![
                ("Panel A: New Parameter Values", &PARAMS[..]),
                ("Panel B: Closed-Form Solutions (in percent)", &HATS[..]),
                ("Panel C: Welfare Effects (in 2012$ million)", &WELFARE[..]),
            ],
        ),
        "table-4" => (
            "Structural Sensitivity",
            vec![
                ("Panel A: Exogenous Policy Change (in percentage)", &SHOCKS_STRUCTURAL[..]),
                ("Panel B: New Parameter Values", &PARAMS[..]),
                ("Panel C: Closed-Form Solutions (in percent)", &HATS[..]),
                ("Panel D: Welfare Effects (in 2012$ million)", &WELFARE[..]),
            ],
        ),
        "table-D1" | "table-D2" | "table-D3" => (
            "Detailed Welfare Effects (in 2012$ million)",
            vec![("", &SIX_TERM[..])],
        ),
        "scenario" => (
            "Scenario results",
            vec![
                ("Panel A: Exogenous Policy Change (in percentage)", &SHOCKS_ALL[..]),
                ("Panel B: Closed-Form Solutions (in percent)", &HATS[..]),
                ("Panel C: Welfare Effects (in 2012$ million)", &WELFARE[..]),
                ("Six-term welfare (in 2012$ million)", &SIX_TERM[1..]),
            ],
        ),
        _ => return None,
    })
}

/// Names accepted by [`render_table`].
pub const TABLE_LAYOUTS: [&str; 8] = [
    "table-1", "table-2", "table-3", "table-4", "table-D1", "table-D2", "table-D3", "scenario",
];

fn format_cell(cell: Cell, unit: Unit, quantity: &str, precision: Precision) -> String {
    match cell {
        Cell::Undefined => "n/a".into(),
        Cell::Infinite => "∞".into(),
        Cell::Number(v) => {
            let places = match unit {
                Unit::Percent => precision.percent,
                Unit::Money => precision.money,
                Unit::Param if quantity == "n" && v == 1.0 => 0,
                Unit::Param => precision.percent,
            };
            round_half_away(v, places)
        }
    }
}

/// Renders records in a published layout. Cases appear in first-seen order;
/// exogenous cells carry a trailing `*`.
pub fn render_table(table: &str, records: &[Record], precision: Precision) -> Result<String> {
    let (title, panels) = layout(table).ok_or_else(|| Error::UnknownScenario(table.to_string()))?;
    let mut cases: Vec<&str> = Vec::new();
    for r in records {
        if !cases.contains(&r.case.as_str()) {
            cases.push(&r.case);
        }
    }
    let index: HashMap<(Section, &str, &str), &Record> = records.iter().map(|r| (r.key(), r)).collect();
    let mut out = format!("{title}\n\nCase:");
    for c in &cases {
        out.push('\t');
        out.push_str(c);
    }
    out.push('\n');
    for (heading, rows) in panels {
        if !heading.is_empty() {
            out.push_str(heading);
            out.push('\n');
        }
        for row in rows {
            out.push_str(row.label);
            for c in &cases {
                out.push('\t');
                match index.get(&(row.section, row.quantity, *c)) {
                    Some(r) => {
                        out.push_str(&format_cell(r.value, row.unit, row.quantity, precision));
                        if r.exogenous {
                            out.push('*');
                        }
                    }
                    None => out.push('-'),
                }
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// One cell outside its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellFailure {
    pub section: Section,
    pub quantity: String,
    pub case: String,
    pub golden: Cell,
    pub emitted: Cell,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffReport {
    pub compared: usize,
    pub failures: Vec<CellFailure>,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tolerance for a printed golden value.
pub fn golden_tolerance(section: Section, quantity: &str, printed: f64) -> f64 {
    match section {
        Section::Shock | Section::Hat => tolerance::HAT_PP,
        Section::Welfare | Section::SixTerm => tolerance::money(printed),
        Section::Param => match quantity {
            "K_E" | "K_X" => 0.5,
            "omega_E" => 0.05,
            "Pi_E" | "T" => tolerance::money(printed),
            _ => tolerance::PARAM_ABS,
        },
    }
}

/// Compares every golden cell with the emitted cell of the same key.
/// Emitted records may carry extra cells; a golden cell with no emitted
/// counterpart, or a duplicated key, is a shape error.
pub fn diff_golden(emitted: &[Record], golden: &[Record]) -> Result<DiffReport> {
    let mut index: HashMap<(Section, &str, &str), &Record> = HashMap::new();
    for r in emitted {
        if index.insert(r.key(), r).is_some() {
            return Err(Error::ShapeMismatch(format!("duplicate emitted cell {:?}", r.key())));
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut failures = Vec::new();
    for g in golden {
        if !seen.insert(g.key()) {
            return Err(Error::ShapeMismatch(format!("duplicate golden cell {:?}", g.key())));
        }
        let e = index
            .get(&g.key())
            .ok_or_else(|| Error::ShapeMismatch(format!("no emitted cell for {:?}", g.key())))?;
        let (ok, tol) = match (g.value, e.value) {
            (Cell::Number(gv), Cell::Number(ev)) => {
                let tol = golden_tolerance(g.section, &g.quantity, gv);
                ((gv - ev).abs() <= tol, tol)
            }
            (a, b) => (a == b, 0.0),
        };
        if !ok {
            failures.push(CellFailure {
                section: g.section,
                quantity: g.quantity.clone(),
                case: g.case.clone(),
                golden: g.value,
                emitted: e.value,
                tolerance: tol,
            });
        }
    }
    Ok(DiffReport { compared: golden.len(), failures })
}

/// Golden transcriptions of the published tables, by layout name.
pub const GOLDENS: [(&str, &str); 7] = [
    ("table-1", include_str!("../goldens/table_1.csv")),
    ("table-2", include_str!("../goldens/table_2.csv")),
    ("table-3", include_str!("../goldens/table_3.csv")),
    ("table-4", include_str!("../goldens/table_4.csv")),
    ("table-D1", include_str!("../goldens/table_d1.csv")),
    ("table-D2", include_str!("../goldens/table_d2.csv")),
    ("table-D3", include_str!("../goldens/table_d3.csv")),
];

pub fn golden(table: &str) -> Result<Vec<Record>> {
    let (_, text) = GOLDENS
        .iter()
        .find(|(name, _)| *name == table)
        .ok_or_else(|| Error::UnknownScenario(table.to_string()))?;
    read_delimited(text)
}

/// Full-precision records for a published table, computed from `economy`.
pub fn table_records(economy: &CanonicalEconomy, table: &str) -> Result<Vec<Record>> {
    if table == "table-1" {
        let p = calibrate(economy, &CalibrationOptions::default())?;
        return Ok(calibration_records(&p, "base"));
    }
    let cases = policy::table_cases(table).ok_or_else(|| Error::UnknownScenario(table.to_string()))?;
    let specs = cases.iter().map(|c| policy::builtin(c)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for r in policy::run_sensitivity(economy, &specs) {
        out.extend(scenario_records(&r?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round_half_away(0.125, 2), "0.13");
        assert_eq!(round_half_away(-0.125, 2), "-0.13");
        assert_eq!(round_half_away(2.5, 0), "3");
        assert_eq!(round_half_away(-2.5, 0), "-3");
        assert_eq!(round_half_away(-0.001, 2), "-0.00");
    }

    #[test]
    fn cells_parse_markers() {
        assert_eq!("inf".parse::<Cell>().unwrap(), Cell::Infinite);
        assert_eq!("n/a".parse::<Cell>().unwrap(), Cell::Undefined);
        assert_eq!("-3.27".parse::<Cell>().unwrap(), Cell::Number(-3.27));
        assert!("abc".parse::<Cell>().is_err());
    }

    #[test]
    fn json_cells_round_trip() {
        for c in [Cell::Number(1.5), Cell::Infinite, Cell::Undefined] {
            let s = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<Cell>(&s).unwrap(), c);
        }
    }

    #[test]
    fn unknown_layout_is_an_error() {
        assert!(render_table("table-9", &[], Precision::default()).is_err());
    }
}
