use serde::{Deserialize, Serialize};

use crate::coloring::{pattern, Color, ColorPattern, Coloring, PartialColoring};
use crate::{Error, Point};

/// Which extreme a search looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchKind {
    #[serde(rename = "minimum")]
    Minimum,
    #[serde(rename = "largest-minimal")]
    LargestMinimal,
}

impl SearchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchKind::Minimum => "minimum",
            SearchKind::LargestMinimal => "largest-minimal",
        }
    }
}

impl std::str::FromStr for SearchKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "minimum" | "min" => Ok(SearchKind::Minimum),
            "largest-minimal" | "largest" => Ok(SearchKind::LargestMinimal),
            _ => Err(Error::Parse(format!("unknown search kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    Strong,
    Weak,
}

impl Strength {
    pub fn as_str(self) -> &'static str {
        match self {
            Strength::Strong => "strong",
            Strength::Weak => "weak",
        }
    }
}

/// A defining set found by a search, with the colouring it determines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RecordJson", try_from = "RecordJson")]
pub struct DefiningSetRecord {
    pub system_id: String,
    pub pattern: ColorPattern,
    pub set: PartialColoring,
    pub size: usize,
    pub kind: SearchKind,
    pub strength: Strength,
    pub witness: Coloring,
}

impl DefiningSetRecord {
    pub fn v(&self) -> usize {
        self.witness.v()
    }

    /// The row form: set points in capitals, the rest lowercase.
    pub fn row(&self) -> String {
        row_string(&self.set, &self.witness)
    }
}

/// Capital letters for the points of `set`, lowercase for the others.
pub fn row_string(set: &PartialColoring, witness: &Coloring) -> String {
    witness
        .colors()
        .iter()
        .enumerate()
        .map(|(p, c)| {
            let ch = c.as_char();
            if set.get(p).is_some() {
                ch
            } else {
                ch.to_ascii_lowercase()
            }
        })
        .collect()
}

/// One coloured point of a set, as serialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEntry {
    pub point: Point,
    pub color: Color,
}

/// Serialized form; field order is the documented key order.
#[derive(Serialize, Deserialize)]
struct RecordJson {
    system_id: String,
    v: usize,
    pattern: ColorPattern,
    set: Vec<SetEntry>,
    size: usize,
    kind: SearchKind,
    strength: Strength,
    witness: String,
}

impl From<DefiningSetRecord> for RecordJson {
    fn from(r: DefiningSetRecord) -> Self {
        RecordJson {
            system_id: r.system_id,
            v: r.witness.v(),
            pattern: r.pattern,
            set: r
                .set
                .iter()
                .map(|(point, color)| SetEntry { point, color })
                .collect(),
            size: r.size,
            kind: r.kind,
            strength: r.strength,
            witness: r.witness.to_string(),
        }
    }
}

impl TryFrom<RecordJson> for DefiningSetRecord {
    type Error = Error;

    fn try_from(j: RecordJson) -> Result<Self, Error> {
        let witness: Coloring = j.witness.parse()?;
        if witness.v() != j.v {
            return Err(Error::Parse(format!(
                "witness has {} points, v = {}",
                witness.v(),
                j.v
            )));
        }
        let set: PartialColoring = j.set.iter().map(|e| (e.point, e.color)).collect();
        if set.len() != j.set.len() || set.len() != j.size {
            return Err(Error::Parse("set entries disagree with size".into()));
        }
        if !set.is_extended_by(&witness) {
            return Err(Error::Parse("set disagrees with witness".into()));
        }
        if pattern(&witness) != j.pattern {
            return Err(Error::Parse(format!(
                "pattern {} disagrees with witness",
                j.pattern
            )));
        }
        Ok(DefiningSetRecord {
            system_id: j.system_id,
            pattern: j.pattern,
            set,
            size: j.size,
            kind: j.kind,
            strength: j.strength,
            witness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DefiningSetRecord {
        let witness: Coloring = "RRRGGRY".parse().unwrap();
        let set = witness.restrict(0b011_1111);
        DefiningSetRecord {
            system_id: "sts7".into(),
            pattern: pattern(&witness),
            size: set.len(),
            set,
            kind: SearchKind::Minimum,
            strength: Strength::Strong,
            witness,
        }
    }

    #[test]
    fn json_key_order() {
        let json = serde_json::to_string(&sample()).unwrap();
        assert_eq!(
            json,
            r#"{"system_id":"sts7","v":7,"pattern":[4,2,1],"set":[{"point":0,"color":"R"},{"point":1,"color":"R"},{"point":2,"color":"R"},{"point":3,"color":"G"},{"point":4,"color":"G"},{"point":5,"color":"R"}],"size":6,"kind":"minimum","strength":"strong","witness":"RRRGGRY"}"#
        );
        let back: DefiningSetRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sample());
    }

    #[test]
    fn inconsistent_json_is_rejected() {
        let json = serde_json::to_string(&sample())
            .unwrap()
            .replace("\"size\":6", "\"size\":5");
        assert!(serde_json::from_str::<DefiningSetRecord>(&json).is_err());
    }

    #[test]
    fn row_form() {
        assert_eq!(sample().row(), "RRRGGRy");
    }
}
