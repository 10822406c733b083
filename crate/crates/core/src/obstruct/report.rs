use std::fmt;

use serde::Serialize;

use super::{Battery, DoublyReport, LevelReport, TensorReport};
use crate::etacalc::L2Expression;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub certified: bool,
    pub reason: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
}

impl Verdict {
    pub fn certified(claim: &str, reason: impl Into<String>) -> Self {
        Verdict { claim: claim.into(), certified: true, reason: reason.into(), assumptions: Vec::new() }
    }

    pub fn none(claim: &str, reason: impl Into<String>) -> Self {
        Verdict { claim: claim.into(), certified: false, reason: reason.into(), assumptions: Vec::new() }
    }

    pub fn with_assumptions(mut self, a: Vec<String>) -> Self {
        self.assumptions = a;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The published value disagrees with the recomputed one and the
    /// disagreement is a known, recorded one.
    Discrepancy,
}

/// One expected-vs-computed comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `published` for values quoted from the literature, `derived` for
    /// values from an independent computation.
    pub source: &'static str,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Check {
    pub fn compare<T: PartialEq + fmt::Display>(name: &str, source: &'static str, expected: T, computed: T) -> Self {
        let status = if expected == computed { CheckStatus::Pass } else { CheckStatus::Fail };
        Check {
            name: name.into(),
            source,
            expected: expected.to_string(),
            computed: computed.to_string(),
            status,
            note: String::new(),
        }
    }

    pub fn holds(name: &str, source: &'static str, ok: bool, computed: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            source,
            expected: "true".into(),
            computed: computed.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            note: String::new(),
        }
    }

    /// A published value known to disagree with `computed`; passes only
    /// while the disagreement persists exactly as recorded.
    pub fn known_discrepancy<T: PartialEq + fmt::Display>(
        name: &str,
        published: T,
        recorded: T,
        computed: T,
        note: &str,
    ) -> Self {
        let status = if computed == recorded && published != computed {
            CheckStatus::Discrepancy
        } else {
            CheckStatus::Fail
        };
        Check {
            name: name.into(),
            source: "published",
            expected: published.to_string(),
            computed: computed.to_string(),
            status,
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ObstructionReport {
    pub knot: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub battery: Option<Battery>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<LevelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doubly: Option<DoublyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l2: Option<L2Expression>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    /// Levels left out of a default sweep, with the reason.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
    pub verdicts: Vec<Verdict>,
}

impl ObstructionReport {
    pub fn new(knot: impl Into<String>) -> Self {
        ObstructionReport { knot: knot.into(), ..Default::default() }
    }

    pub fn obstruction_certified(&self) -> bool {
        self.verdicts.iter().any(|v| v.certified)
    }

    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// 0 when nothing is certified, 2 when some obstruction is.
    pub fn exit_code(&self) -> i32 {
        if self.obstruction_certified() {
            2
        } else {
            0
        }
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knot: {}", self.knot)?;
        if let Some(b) = &self.battery {
            writeln!(f, "alexander: {}", b.alexander)?;
            writeln!(f, "arf: {}", if b.arf_zero { 0 } else { 1 })?;
            match &b.fox_milnor.witness {
                Some(w) => writeln!(f, "fox-milnor: satisfied, f = {w}")?,
                None => writeln!(f, "fox-milnor: fails")?,
            }
            let nonzero: Vec<String> = b
                .signatures
                .iter()
                .filter(|s| s.value != 0)
                .map(|s| format!("{}:{}", s.turn, s.value))
                .collect();
            if nonzero.is_empty() {
                writeln!(f, "signatures: all zero at {} prime-power turns", b.signatures.len())?;
            } else {
                writeln!(f, "signatures (nonzero): {}", nonzero.join(" "))?;
            }
        }
        for l in &self.levels {
            writeln!(
                f,
                "level k={} [{:?}] H_1 = {:?} (order {}), metabolizers {}, orders {:?}: {}{}",
                l.k,
                l.mode,
                l.factors,
                l.cover_order,
                l.metabolizer_count,
                l.orders,
                l.note,
                if l.vacuous { " (vacuous)" } else { "" }
            )?;
            for m in &l.metabolizers {
                write!(
                    f,
                    "  P#{} |P|={} characters {} admissible {}",
                    m.index, m.order, m.characters_checked, m.admissible
                )?;
                match &m.witness {
                    Some(w) => writeln!(f, " witness χ={:?}/{} η {}", w.character.values, w.character.modulus, w.eta)?,
                    None => writeln!(f, " no witness")?,
                }
            }
        }
        if let Some(t) = &self.tensor {
            writeln!(f, "tensor levels {:?}, metabolizers {:?}: {}", t.levels, t.metabolizer_counts, t.note)?;
        }
        if let Some(d) = &self.doubly {
            for l in &d.levels {
                writeln!(
                    f,
                    "doubly k={} order {} metabolizers {} complementary pairs {}",
                    l.k, l.cover_order, l.metabolizers, l.pairs
                )?;
            }
        }
        if let Some(l2) = &self.l2 {
            match &l2.value {
                Some(v) => writeln!(f, "metabelian L² eta: {v}")?,
                None => writeln!(f, "metabelian L² eta: unknown")?,
            }
        }
        for s in &self.skipped {
            writeln!(f, "skipped: {s}")?;
        }
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Discrepancy => "KNOWN-DISCREPANCY",
            };
            write!(f, "[{tag}] {} ({}): expected {}, computed {}", c.name, c.source, c.expected, c.computed)?;
            if c.note.is_empty() {
                writeln!(f)?;
            } else {
                writeln!(f, "; {}", c.note)?;
            }
        }
        for v in &self.verdicts {
            let mark = if v.certified { "CERTIFIED" } else { "not certified" };
            writeln!(f, "{}: {mark} ({})", v.claim, v.reason)?;
            for a in &v.assumptions {
                writeln!(f, "  assuming: {a}")?;
            }
        }
        Ok(())
    }
}
