use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pattern::Pattern;

use super::EnumerationError;

/// The aggregate `f^p_n`, when it is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Total {
    Exact(u64),
    Infinite,
    Undetermined,
}

impl fmt::Display for Total {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Total::Exact(v) => write!(f, "{v}"),
            Total::Infinite => f.write_str("INFINITE"),
            Total::Undetermined => f.write_str("UNDETERMINED"),
        }
    }
}

impl FromStr for Total {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "INFINITE" => Ok(Total::Infinite),
            "UNDETERMINED" => Ok(Total::Undetermined),
            other => other
                .parse()
                .map(Total::Exact)
                .map_err(|_| EnumerationError::Format(format!("bad total {other:?}"))),
        }
    }
}

impl Serialize for Total {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Total::Exact(v) => serializer.serialize_u64(*v),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Total {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Label(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Count(v) => Ok(Total::Exact(v)),
            Raw::Label(s) => match s.as_str() {
                "INFINITE" => Ok(Total::Infinite),
                "UNDETERMINED" => Ok(Total::Undetermined),
                _ => Err(serde::de::Error::custom(format!("bad total {s:?}"))),
            },
        }
    }
}

/// Avoider counts `g^p_{m,n}` by length `m`, with the total `f^p_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCountTable {
    pub pattern: Pattern,
    pub n: usize,
    pub counts: BTreeMap<u64, u64>,
    /// Grades `0..=max_length` were examined.
    pub max_length: u64,
    pub total: Total,
    /// Computed under the unproven `3·binom(n,2)` horizon for 3412.
    pub assumes_tight_bound: bool,
}

#[derive(Serialize, Deserialize)]
struct Row {
    length: u64,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    pattern: Pattern,
    n: usize,
    max_length: u64,
    #[serde(default)]
    assumes_tight_bound: bool,
    rows: Vec<Row>,
    total: Total,
}

impl GradedCountTable {
    pub fn counted_sum(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count_at(&self, length: u64) -> u64 {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    /// `pattern,n,length,count` rows followed by `pattern,n,total,<total>`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("pattern,n,length,count\n");
        for (length, count) in &self.counts {
            out.push_str(&format!("{},{},{},{}\n", self.pattern, self.n, length, count));
        }
        out.push_str(&format!("{},{},total,{}\n", self.pattern, self.n, self.total));
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, EnumerationError> {
        let bad = |msg: String| EnumerationError::Format(msg);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "pattern,n,length,count" => {}
            other => return Err(bad(format!("bad header {other:?}"))),
        }
        let mut meta: Option<(Pattern, usize)> = None;
        let mut counts = BTreeMap::new();
        let mut total = None;
        for line in lines {
            // patterns of size > 9 contain commas, so split from the right
            let fields: Vec<&str> = line.rsplitn(3, ',').collect();
            if fields.len() != 3 {
                return Err(bad(format!("bad row {line:?}")));
            }
            let (value, key, head) = (fields[0], fields[1], fields[2]);
            let (pattern_text, n_text) = head
                .rsplit_once(',')
                .ok_or_else(|| bad(format!("bad row {line:?}")))?;
            let pattern: Pattern = pattern_text
                .parse()
                .map_err(|e| bad(format!("bad pattern in {line:?}: {e}")))?;
            let n: usize = n_text
                .parse()
                .map_err(|_| bad(format!("bad rank in {line:?}")))?;
            match &meta {
                None => meta = Some((pattern, n)),
                Some((p, m)) if *p == pattern && *m == n => {}
                Some(_) => return Err(bad(format!("mixed tables at {line:?}"))),
            }
            if key == "total" {
                total = Some(value.parse::<Total>()?);
            } else {
                let length = key
                    .parse()
                    .map_err(|_| bad(format!("bad length in {line:?}")))?;
                let count = value
                    .parse()
                    .map_err(|_| bad(format!("bad count in {line:?}")))?;
                counts.insert(length, count);
            }
        }
        let (pattern, n) = meta.ok_or_else(|| bad("empty table".into()))?;
        let total = total.ok_or_else(|| bad("missing total row".into()))?;
        let max_length = counts.keys().next_back().copied().unwrap_or(0);
        Ok(Self {
            pattern,
            n,
            counts,
            max_length,
            total,
            assumes_tight_bound: false,
        })
    }

    pub fn to_json(&self) -> String {
        let json = TableJson {
            pattern: self.pattern.clone(),
            n: self.n,
            max_length: self.max_length,
            assumes_tight_bound: self.assumes_tight_bound,
            rows: self
                .counts
                .iter()
                .map(|(&length, &count)| Row { length, count })
                .collect(),
            total: self.total,
        };
        serde_json::to_string_pretty(&json).expect("table serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, EnumerationError> {
        let json: TableJson =
            serde_json::from_str(text).map_err(|e| EnumerationError::Format(e.to_string()))?;
        Ok(Self {
            pattern: json.pattern,
            n: json.n,
            counts: json.rows.into_iter().map(|r| (r.length, r.count)).collect(),
            max_length: json.max_length,
            total: json.total,
            assumes_tight_bound: json.assumes_tight_bound,
        })
    }
}
