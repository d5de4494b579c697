//! Table ingestion and equivalence-class partitioning.
//!
//! A [`Table`] is a list of text records tied to a [`Schema`] that assigns
//! every attribute a role. Records that agree on every quasi-identifier
//! cell form an [`EquivalenceClass`]; the classes partition the table.

use std::collections::HashMap;
use std::io::Read;

use serde::Deserialize;
use thiserror::Error;

/// Role of an attribute within a schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributeRole {
    #[serde(rename = "explicit")]
    ExplicitIdentifier,
    #[serde(rename = "quasi")]
    QuasiIdentifier,
    SensitiveNumeric,
    SensitiveCategorical,
}

impl AttributeRole {
    pub fn is_sensitive(self) -> bool {
        matches!(
            self,
            AttributeRole::SensitiveNumeric | AttributeRole::SensitiveCategorical
        )
    }

    /// String form used in schema files and reports.
    pub fn as_str(self) -> &'static str {
        match self {
            AttributeRole::ExplicitIdentifier => "explicit",
            AttributeRole::QuasiIdentifier => "quasi",
            AttributeRole::SensitiveNumeric => "sensitive_numeric",
            AttributeRole::SensitiveCategorical => "sensitive_categorical",
        }
    }
}

/// A named attribute with its role.
#[derive(Debug, Clone, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub role: AttributeRole,
}

/// Ordered list of attributes describing one table.
#[derive(Debug, Clone)]
pub struct Schema {
    attributes: Vec<Attribute>,
}

#[derive(Debug, Error, PartialEq)]
pub enum SchemaError {
    #[error("duplicate attribute name: {0}")]
    DuplicateAttribute(String),
    #[error("schema has no sensitive attribute")]
    NoSensitiveAttribute,
    #[error("schema has no attributes")]
    Empty,
    #[error("invalid schema JSON: {0}")]
    InvalidJson(String),
}

#[derive(Deserialize)]
struct SchemaDoc {
    attributes: Vec<Attribute>,
}

impl Schema {
    /// Validates attribute-name uniqueness and the presence of at least one
    /// sensitive attribute. A schema without quasi-identifiers is accepted;
    /// it yields a single equivalence class covering the whole table.
    pub fn new(attributes: Vec<Attribute>) -> Result<Self, SchemaError> {
        if attributes.is_empty() {
            return Err(SchemaError::Empty);
        }
        let mut seen = HashMap::new();
        for attr in &attributes {
            if seen.insert(attr.name.clone(), ()).is_some() {
                return Err(SchemaError::DuplicateAttribute(attr.name.clone()));
            }
        }
        if !attributes.iter().any(|a| a.role.is_sensitive()) {
            return Err(SchemaError::NoSensitiveAttribute);
        }
        Ok(Schema { attributes })
    }

    /// Parses the JSON schema document:
    /// `{"attributes": [{"name": "...", "role": "explicit|quasi|sensitive_numeric|sensitive_categorical"}]}`.
    pub fn from_json(text: &str) -> Result<Self, SchemaError> {
        let doc: SchemaDoc =
            serde_json::from_str(text).map_err(|e| SchemaError::InvalidJson(e.to_string()))?;
        Schema::new(doc.attributes)
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    pub fn role_of(&self, name: &str) -> Option<AttributeRole> {
        self.attributes
            .iter()
            .find(|a| a.name == name)
            .map(|a| a.role)
    }

    /// Positions of the quasi-identifier attributes, in schema order.
    pub fn qi_indices(&self) -> Vec<usize> {
        self.attributes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.role == AttributeRole::QuasiIdentifier)
            .map(|(i, _)| i)
            .collect()
    }

    /// Names of the sensitive attributes, in schema order.
    pub fn sensitive_attributes(&self) -> Vec<&str> {
        self.attributes
            .iter()
            .filter(|a| a.role.is_sensitive())
            .map(|a| a.name.as_str())
            .collect()
    }
}

/// What to do with a record whose cell is empty after trimming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingValuePolicy {
    #[default]
    Error,
    DropRow,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("input is missing column {0:?}")]
    MissingColumn(String),
    #[error("row at line {0} has the wrong number of fields")]
    RaggedRow(u64),
    #[error("input contains no data rows")]
    EmptyTable,
    #[error("empty value at line {line}, column {column:?}")]
    MissingValue { line: u64, column: String },
    #[error("CSV error: {0}")]
    Csv(String),
}

/// An immutable table: rows of text cells aligned to a schema.
#[derive(Debug, Clone)]
pub struct Table {
    schema: Schema,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(schema: Schema, rows: Vec<Vec<String>>) -> Result<Self, TableError> {
        if rows.is_empty() {
            return Err(TableError::EmptyTable);
        }
        let width = schema.attributes().len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(TableError::RaggedRow(i as u64 + 1));
            }
        }
        Ok(Table { schema, rows })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// All values of one attribute, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let idx = self.schema.index_of(name)?;
        Some(self.rows.iter().map(|r| r[idx].as_str()).collect())
    }
}

/// A maximal group of records sharing one quasi-identifier value tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub qi_key: Vec<String>,
    pub row_indices: Vec<usize>,
}

impl EquivalenceClass {
    pub fn size(&self) -> usize {
        self.row_indices.len()
    }

    /// The multiset of values this class holds for one attribute.
    pub fn values<'t>(&self, table: &'t Table, attribute: &str) -> Option<Vec<&'t str>> {
        let idx = table.schema().index_of(attribute)?;
        Some(
            self.row_indices
                .iter()
                .map(|&r| table.rows()[r][idx].as_str())
                .collect(),
        )
    }
}

/// Reads an RFC-4180-style CSV with a header row. The header must cover
/// every schema attribute name; extra columns are ignored. Cells are
/// trimmed of surrounding whitespace. Rows are kept in input order.
pub fn parse_csv<R: Read>(
    input: R,
    schema: &Schema,
    policy: MissingValuePolicy,
) -> Result<Table, TableError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input);

    let headers = reader
        .headers()
        .map_err(|e| TableError::Csv(e.to_string()))?
        .clone();
    let header_width = headers.len();

    // Map each schema attribute to its CSV column position.
    let mut positions = Vec::with_capacity(schema.attributes().len());
    for attr in schema.attributes() {
        let pos = headers
            .iter()
            .position(|h| h.trim() == attr.name)
            .ok_or_else(|| TableError::MissingColumn(attr.name.clone()))?;
        positions.push(pos);
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| TableError::Csv(e.to_string()))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != header_width {
            return Err(TableError::RaggedRow(line));
        }
        let mut row = Vec::with_capacity(positions.len());
        let mut missing = None;
        for (&pos, attr) in positions.iter().zip(schema.attributes()) {
            let cell = record.get(pos).unwrap_or("").trim().to_string();
            if cell.is_empty() && missing.is_none() {
                missing = Some(attr.name.clone());
            }
            row.push(cell);
        }
        if let Some(column) = missing {
            match policy {
                MissingValuePolicy::Error => {
                    return Err(TableError::MissingValue { line, column })
                }
                MissingValuePolicy::DropRow => continue,
            }
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(TableError::EmptyTable);
    }
    Table::new(schema.clone(), rows)
}

/// Groups rows into equivalence classes over the quasi-identifier.
/// Classes come back in order of first appearance of each QI tuple.
pub fn partition_classes(table: &Table) -> Vec<EquivalenceClass> {
    let qi = table.schema().qi_indices();
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    let mut index: HashMap<Vec<String>, usize> = HashMap::new();

    for (row_idx, row) in table.rows().iter().enumerate() {
        let key: Vec<String> = qi.iter().map(|&i| row[i].clone()).collect();
        match index.get(&key) {
            Some(&c) => classes[c].row_indices.push(row_idx),
            None => {
                index.insert(key.clone(), classes.len());
                classes.push(EquivalenceClass {
                    qi_key: key,
                    row_indices: vec![row_idx],
                });
            }
        }
    }
    classes
}
