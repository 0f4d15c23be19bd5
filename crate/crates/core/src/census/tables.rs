//! Published tables as CSV or JSON.

use std::fmt;
use std::str::FromStr;

use super::{Census, CountKind, SymmetricMethod};
use crate::square::{PropertyFilter, Shape, Symmetry};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableName {
    Tabsym,
    Comloop,
    Agopts,
    Semi,
    Diag,
    Idem,
    Semiloop,
    Totsym,
    Unipsym,
    Sts,
}

impl TableName {
    pub const ALL: [TableName; 10] = [
        TableName::Tabsym,
        TableName::Comloop,
        TableName::Agopts,
        TableName::Semi,
        TableName::Diag,
        TableName::Idem,
        TableName::Semiloop,
        TableName::Totsym,
        TableName::Unipsym,
        TableName::Sts,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TableName::Tabsym => "tabsym",
            TableName::Comloop => "comloop",
            TableName::Agopts => "agopts",
            TableName::Semi => "semi",
            TableName::Diag => "diag",
            TableName::Idem => "idem",
            TableName::Semiloop => "semiloop",
            TableName::Totsym => "totsym",
            TableName::Unipsym => "unipsym",
            TableName::Sts => "sts",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        const CLOSED: &[&str] = &["order", "isomorphism_classes", "isotopism_classes", "species", "all_squares"];
        match self {
            TableName::Tabsym => &["order", "rrs_isotopism_classes", "species", "reduced"],
            TableName::Comloop => &["order", "isomorphism_classes", "loops"],
            TableName::Agopts => &["order", "alpha", "gamma", "ls"],
            TableName::Semi | TableName::Diag | TableName::Idem | TableName::Semiloop => CLOSED,
            TableName::Totsym => &["order", "isomorphism_classes", "species", "all_squares"],
            TableName::Unipsym => &["order", "isomorphism_classes", "rrs_isotopism_classes", "species"],
            TableName::Sts => &["order", "species", "all_squares"],
        }
    }

    /// Largest order this implementation computes.
    pub fn max_order(self) -> usize {
        match self {
            TableName::Tabsym | TableName::Comloop | TableName::Agopts => 9,
            TableName::Semi | TableName::Diag => 9,
            TableName::Idem | TableName::Semiloop => 10,
            TableName::Totsym => 12,
            TableName::Unipsym => 8,
            TableName::Sts => 15,
        }
    }

    /// Orders listed in the table, up to `max`.
    pub fn orders(self, max: usize) -> Vec<usize> {
        (2..=max)
            .filter(|&n| match self {
                TableName::Idem => n % 3 != 2,
                TableName::Semiloop => n % 3 != 0,
                TableName::Unipsym => n % 2 == 0,
                TableName::Sts => n % 6 == 1 || n % 6 == 3,
                _ => true,
            })
            .collect()
    }

    fn closed_filter(self) -> Option<PropertyFilter> {
        let semi = Symmetry::Semisymmetric;
        match self {
            TableName::Semi => Some(PropertyFilter::plain(semi)),
            TableName::Diag => Some(PropertyFilter::with(semi, Shape::Diagonal)),
            TableName::Idem => Some(PropertyFilter::with(semi, Shape::Idempotent)),
            TableName::Semiloop => Some(PropertyFilter::with(semi, Shape::Reduced)),
            TableName::Totsym => Some(PropertyFilter::plain(Symmetry::TotallySymmetric)),
            TableName::Sts => Some(PropertyFilter::with(Symmetry::TotallySymmetric, Shape::Idempotent)),
            _ => None,
        }
    }
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableName::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown table {s:?}")))
    }
}

/// Rows of decimal strings under the table's column names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: TableName,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn build(name: TableName, max_order: usize, census: &mut Census) -> Result<Table> {
        if max_order > name.max_order() {
            return Err(Error::Unsupported(format!(
                "table {name} is computed up to order {}, not {max_order}",
                name.max_order()
            )));
        }
        let mut rows = Vec::new();
        for n in name.orders(max_order) {
            let s = |v: &num_bigint::BigUint| v.to_string();
            match name {
                TableName::Tabsym => {
                    let c = census.symmetric(n)?;
                    rows.push(vec![n.to_string(), s(&c.rrs_classes()), s(&c.species), s(&c.reduced)]);
                }
                TableName::Comloop => {
                    let c = census.symmetric(n)?;
                    rows.push(vec![n.to_string(), s(&c.isomorphism_classes()), s(&c.loop_classes())]);
                }
                TableName::Agopts => {
                    let c = census.symmetric_by(n, SymmetricMethod::Autotopism)?;
                    for sh in &c.shapes {
                        rows.push(vec![n.to_string(), sh.shape.alpha.to_string(), sh.shape.gamma.to_string(), sh.rrs_classes.to_string()]);
                    }
                }
                TableName::Unipsym => {
                    let r = census.unipotent_symmetric(n)?;
                    let mut row = vec![n.to_string()];
                    for k in [CountKind::Isomorphism, CountKind::RrsIsotopism, CountKind::Species] {
                        row.push(s(r.require(k)?));
                    }
                    rows.push(row);
                }
                _ => {
                    let filter = name.closed_filter().expect("closed table");
                    let r = census.closed(n, &filter)?.row();
                    let kinds: &[CountKind] = match name {
                        TableName::Totsym => &[CountKind::Isomorphism, CountKind::Species, CountKind::AllSquares],
                        TableName::Sts => &[CountKind::Species, CountKind::AllSquares],
                        _ => &[CountKind::Isomorphism, CountKind::Isotopism, CountKind::Species, CountKind::AllSquares],
                    };
                    let mut row = vec![n.to_string()];
                    for &k in kinds {
                        row.push(s(r.require(k)?));
                    }
                    rows.push(row);
                }
            }
        }
        Ok(Table { name, rows })
    }

    pub fn columns(&self) -> &'static [&'static str] {
        self.name.columns()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns().join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of objects; `order` is a number, every other value a string.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns()
                    .iter()
                    .zip(r)
                    .map(|(c, v)| {
                        let val = match (*c, v.parse::<u64>()) {
                            ("order", Ok(n)) => serde_json::Value::from(n),
                            _ => serde_json::Value::from(v.clone()),
                        };
                        (c.to_string(), val)
                    })
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::json!({ "table": self.name.as_str(), "rows": serde_json::Value::Array(rows) })
    }
}
