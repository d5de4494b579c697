//! Shared fixtures for the unit tests: the bundled example tables,
//! parsed in memory.

use crate::table::{parse_csv, MissingValuePolicy, Schema, Table};

pub const INCIDENTS_CSV: &str = include_str!("../data/incidents.csv");
pub const SALARY_CSV: &str = include_str!("../data/salary.csv");
pub const MERIT_CSV: &str = include_str!("../data/merit.csv");

pub const INCIDENTS_SCHEMA: &str = include_str!("../data/incidents.schema.json");
pub const SALARY_SCHEMA: &str = include_str!("../data/salary.schema.json");
pub const MERIT_SCHEMA: &str = include_str!("../data/merit.schema.json");

fn load(csv: &str, schema: &str) -> Table {
    let schema = Schema::from_json(schema).expect("fixture schema is valid");
    parse_csv(csv.as_bytes(), &schema, MissingValuePolicy::Error).expect("fixture CSV is valid")
}

pub fn incidents_table() -> Table {
    load(INCIDENTS_CSV, INCIDENTS_SCHEMA)
}

pub fn salary_table() -> Table {
    load(SALARY_CSV, SALARY_SCHEMA)
}

pub fn merit_table() -> Table {
    load(MERIT_CSV, MERIT_SCHEMA)
}
