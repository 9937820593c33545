//! Sparse rational inequalities over a fixed arc (or edge) ordering, with
//! provenance, and the structured file format they round-trip through.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::graph::{Digraph, IncidenceVector};
use crate::rational::{fmt_rat, parse_rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sense::Le => write!(f, "<="),
            Sense::Ge => write!(f, ">="),
            Sense::Eq => write!(f, "="),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelRowKind {
    /// x(δ⁻(0)) = 0 (nonvacuous in complete mode only).
    SourceInDegree,
    /// x(δ⁺(n)) = 0 (nonvacuous in complete mode only).
    TerminusOutDegree,
    /// Flow conservation at `node`.
    Flow { node: usize },
    /// x(A) = p.
    Cardinality,
    /// Variable lower bound x_a ≥ 0.
    Lower { tail: usize, head: usize },
    /// Variable upper bound x_a ≤ 1.
    Upper { tail: usize, head: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelaxDirection {
    Lower,
    Upper,
}

/// Family tag plus parameters, or a lifting record pointing at its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum Provenance {
    ModelRow { kind: ModelRowKind },
    Nonneg { tail: usize, head: usize },
    Degree { node: usize },
    MinCut { s: Vec<usize> },
    OneSidedMinCut { s: Vec<usize>, l: usize },
    GenMaxCut { r: Vec<usize>, s: Vec<usize>, t: Vec<usize> },
    Broom { i: usize, j: usize, k: usize },
    Jump { blocks: Vec<Vec<usize>> },
    CardPath { nodes: Vec<usize> },
    ExtraP4 { n: usize },
    Undirected105 { delta: Vec<u8> },
    UndirectedModelRow { kind: String },
    CycleLift { source: Box<Provenance> },
    CloneLift { source: Box<Provenance>, node: usize },
    SetLift { source: Box<Provenance>, added: Vec<usize> },
    RelaxLift { source: Box<Provenance>, direction: RelaxDirection },
    UndirectedCounterpart { source: Box<Provenance> },
    Custom { note: String },
}

impl Provenance {
    pub fn custom(note: impl Into<String>) -> Self {
        Provenance::Custom { note: note.into() }
    }

    /// Short family name, used in reports and cut statistics.
    pub fn family_name(&self) -> &'static str {
        match self {
            Provenance::ModelRow { .. } => "model_row",
            Provenance::Nonneg { .. } => "nonneg",
            Provenance::Degree { .. } => "degree",
            Provenance::MinCut { .. } => "min_cut",
            Provenance::OneSidedMinCut { .. } => "one_sided_min_cut",
            Provenance::GenMaxCut { .. } => "gen_max_cut",
            Provenance::Broom { .. } => "broom",
            Provenance::Jump { .. } => "jump",
            Provenance::CardPath { .. } => "card_path",
            Provenance::ExtraP4 { .. } => "extra_p4",
            Provenance::Undirected105 { .. } => "undirected_105",
            Provenance::UndirectedModelRow { .. } => "undirected_model_row",
            Provenance::CycleLift { .. } => "cycle_lift",
            Provenance::CloneLift { .. } => "clone_lift",
            Provenance::SetLift { .. } => "set_lift",
            Provenance::RelaxLift { .. } => "relax_lift",
            Provenance::UndirectedCounterpart { .. } => "undirected_counterpart",
            Provenance::Custom { .. } => "custom",
        }
    }
}

/// Sparse inequality `coeffs · x  sense  rhs` over the arc ordering of a
/// fixed digraph. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    coeffs: BTreeMap<usize, Rational>,
    sense: Sense,
    rhs: Rational,
    provenance: Provenance,
}

impl Inequality {
    pub fn new(
        coeffs: impl IntoIterator<Item = (usize, Rational)>,
        sense: Sense,
        rhs: Rational,
        provenance: Provenance,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in coeffs {
            if v.is_zero() {
                continue;
            }
            let slot = map.entry(k).or_insert_with(Rational::zero);
            *slot += v;
            if slot.is_zero() {
                map.remove(&k);
            }
        }
        Inequality { coeffs: map, sense, rhs, provenance }
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn coeff(&self, idx: usize) -> Rational {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero_row(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Left-hand side value on a 0/1 incidence vector.
    pub fn lhs_on(&self, x: &IncidenceVector) -> Rational {
        let mut sum = Rational::zero();
        for (k, c) in &self.coeffs {
            if x.contains(*k) {
                sum += c;
            }
        }
        sum
    }

    /// Left-hand side value on a dense rational point.
    pub fn lhs_at(&self, x: &[Rational]) -> Rational {
        let mut sum = Rational::zero();
        for (k, c) in &self.coeffs {
            if !x[*k].is_zero() {
                sum += c * &x[*k];
            }
        }
        sum
    }

    pub fn satisfied_by(&self, x: &IncidenceVector) -> bool {
        let lhs = self.lhs_on(x);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }

    pub fn tight_on(&self, x: &IncidenceVector) -> bool {
        self.lhs_on(x) == self.rhs
    }

    /// Positive amount by which a point violates the inequality (zero or
    /// negative means satisfied).
    pub fn violation_at(&self, x: &[Rational]) -> Rational {
        let lhs = self.lhs_at(x);
        match self.sense {
            Sense::Le => lhs - &self.rhs,
            Sense::Ge => self.rhs.clone() - lhs,
            Sense::Eq => {
                let diff = lhs - &self.rhs;
                if diff < Rational::zero() {
                    -diff
                } else {
                    diff
                }
            }
        }
    }

    /// The same face written with sense ≤ (≥ rows are negated). Equations
    /// are returned unchanged.
    pub fn as_le(&self) -> Inequality {
        match self.sense {
            Sense::Le | Sense::Eq => self.clone(),
            Sense::Ge => Inequality {
                coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v)).collect(),
                sense: Sense::Le,
                rhs: -self.rhs.clone(),
                provenance: self.provenance.clone(),
            },
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Dense coefficient row of the given length.
    pub fn dense_coeffs(&self, universe: usize) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); universe];
        for (k, c) in &self.coeffs {
            row[*k] = c.clone();
        }
        row
    }

    pub fn display_on<'a>(&'a self, d: &'a Digraph) -> DisplayIneq<'a> {
        DisplayIneq { ineq: self, d }
    }

    /// Structured file format: one JSON record per inequality.
    pub fn to_record(&self, arcs: &[(usize, usize)]) -> IneqRecord {
        IneqRecord {
            provenance: self.provenance.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| {
                    let (t, h) = arcs[*k];
                    (t, h, c.numer().to_string(), c.denom().to_string())
                })
                .collect(),
            sense: self.sense,
            rhs_num: self.rhs.numer().to_string(),
            rhs_den: self.rhs.denom().to_string(),
        }
    }

    pub fn to_json(&self, arcs: &[(usize, usize)]) -> String {
        serde_json::to_string(&self.to_record(arcs)).expect("inequality serializes")
    }

    pub fn from_record(
        record: IneqRecord,
        arc_index: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self, ParseError> {
        let mut coeffs = BTreeMap::new();
        for (t, h, num, den) in record.coeffs {
            let idx = arc_index(t, h)
                .ok_or_else(|| ParseError::Other(format!("unknown arc ({t}, {h})")))?;
            let c = parse_rat(&format!("{num}/{den}"))
                .ok_or_else(|| ParseError::Other(format!("bad rational {num}/{den}")))?;
            if !c.is_zero() {
                coeffs.insert(idx, c);
            }
        }
        let rhs = parse_rat(&format!("{}/{}", record.rhs_num, record.rhs_den))
            .ok_or_else(|| ParseError::Other("bad rhs rational".into()))?;
        Ok(Inequality { coeffs, sense: record.sense, rhs, provenance: record.provenance })
    }

    pub fn from_json(
        json: &str,
        arc_index: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self, ParseError> {
        let record: IneqRecord =
            serde_json::from_str(json).map_err(|e| ParseError::Other(e.to_string()))?;
        Self::from_record(record, arc_index)
    }
}

/// Wire form of an inequality. `coeffs` entries are (tail, head, num, den);
/// rationals travel as decimal strings so arbitrary precision survives.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IneqRecord {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub coeffs: Vec<(usize, usize, String, String)>,
    pub sense: Sense,
    pub rhs_num: String,
    pub rhs_den: String,
}

pub struct DisplayIneq<'a> {
    ineq: &'a Inequality,
    d: &'a Digraph,
}

impl fmt::Display for DisplayIneq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ineq.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (pos, (k, c)) in self.ineq.coeffs.iter().enumerate() {
            let (t, h) = self.d.arc(*k);
            if pos > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} x({},{})", fmt_rat(c), t, h)?;
        }
        write!(f, " {} {}", self.ineq.sense, fmt_rat(&self.ineq.rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn merges_and_drops_zero_terms() {
        let q = Inequality::new(
            vec![(0, rat(1)), (0, rat(-1)), (2, ratio(1, 2))],
            Sense::Ge,
            rat(0),
            Provenance::custom("t"),
        );
        assert_eq!(q.support().collect::<Vec<_>>(), vec![2]);
        assert_eq!(q.coeff(0), rat(0));
    }

    #[test]
    fn evaluation_and_violation() {
        let d = Digraph::restricted(4).unwrap();
        let p = IncidenceVector::path_from_nodes(&d, &[0, 1, 2, 3, 4]).unwrap();
        let card = Inequality::new(
            (0..d.arc_count()).map(|k| (k, rat(1))),
            Sense::Eq,
            rat(4),
            Provenance::ModelRow { kind: ModelRowKind::Cardinality },
        );
        assert!(card.satisfied_by(&p));
        assert!(card.tight_on(&p));
        let mut x = vec![rat(0); d.arc_count()];
        x[0] = ratio(1, 2);
        assert_eq!(card.violation_at(&x), ratio(7, 2));
    }

    #[test]
    fn le_normalization_flips_ge() {
        let q = Inequality::new(
            vec![(1, rat(2))],
            Sense::Ge,
            rat(1),
            Provenance::custom("t"),
        );
        let le = q.as_le();
        assert_eq!(le.sense(), Sense::Le);
        assert_eq!(le.coeff(1), rat(-2));
        assert_eq!(*le.rhs(), rat(-1));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let d = Digraph::restricted(6).unwrap();
        let q = Inequality::new(
            vec![
                (d.arc_index(0, 1).unwrap(), rat(1)),
                (d.arc_index(2, 3).unwrap(), ratio(-7, 3)),
            ],
            Sense::Ge,
            ratio(1, 2),
            Provenance::MinCut { s: vec![0, 1, 6] },
        );
        let json = q.to_json(d.arcs());
        let back = Inequality::from_json(&json, |t, h| d.arc_index(t, h)).unwrap();
        assert_eq!(back, q);
        assert_eq!(back.to_json(d.arcs()), json);
    }

    #[test]
    fn lift_provenance_round_trips() {
        let d = Digraph::restricted(6).unwrap();
        let q = Inequality::new(
            vec![(0, rat(1))],
            Sense::Le,
            rat(1),
            Provenance::CloneLift {
                source: Box::new(Provenance::Degree { node: 1 }),
                node: 2,
            },
        );
        let json = q.to_json(d.arcs());
        let back = Inequality::from_json(&json, |t, h| d.arc_index(t, h)).unwrap();
        assert_eq!(back.provenance(), q.provenance());
        assert_eq!(back.to_json(d.arcs()), json);
    }
}
