use std::collections::HashMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Table of categorical observations, stored row-major as state indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    names: Vec<String>,
    states: Vec<Vec<String>>,
    cells: Vec<u32>,
}

impl Dataset {
    /// Empty dataset; `states[i]` lists the state names of variable `i`.
    pub fn new(names: Vec<String>, states: Vec<Vec<String>>) -> Result<Self> {
        if names.len() != states.len() {
            return Err(Error::InvalidData(format!(
                "{} variables but {} state lists",
                names.len(),
                states.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for (name, st) in names.iter().zip(&states) {
            if !seen.insert(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
            if st.is_empty() {
                return Err(Error::InvalidData(format!("variable `{name}` has no states")));
            }
        }
        Ok(Self {
            names,
            states,
            cells: Vec::new(),
        })
    }

    pub fn variable_count(&self) -> usize {
        self.names.len()
    }

    pub fn row_count(&self) -> usize {
        if self.names.is_empty() {
            0
        } else {
            self.cells.len() / self.names.len()
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn states(&self, var: usize) -> &[String] {
        &self.states[var]
    }

    pub fn cardinality(&self, var: usize) -> usize {
        self.states[var].len()
    }

    pub fn push_row(&mut self, row: &[u32]) -> Result<()> {
        if row.len() != self.names.len() {
            return Err(Error::InvalidData(format!(
                "row has {} cells, expected {}",
                row.len(),
                self.names.len()
            )));
        }
        for (i, &c) in row.iter().enumerate() {
            if c as usize >= self.states[i].len() {
                return Err(Error::InvalidData(format!(
                    "state index {c} out of range for `{}`",
                    self.names[i]
                )));
            }
        }
        self.cells.extend_from_slice(row);
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[u32] {
        let n = self.names.len();
        &self.cells[r * n..(r + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks_exact(self.names.len().max(1))
    }

    pub fn value(&self, row: usize, var: usize) -> u32 {
        self.cells[row * self.names.len() + var]
    }

    /// Reads CSV with a header of variable names and state names in the body.
    /// State spaces are inferred in order of first appearance.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        Self::read_csv(reader, None)
    }

    /// Like [`Dataset::from_csv`] but with declared state spaces per variable name.
    pub fn from_csv_with_states<R: Read>(
        reader: R,
        states: &HashMap<String, Vec<String>>,
    ) -> Result<Self> {
        Self::read_csv(reader, Some(states))
    }

    fn read_csv<R: Read>(reader: R, declared: Option<&HashMap<String, Vec<String>>>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let names: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let mut states: Vec<Vec<String>> = match declared {
            Some(d) => names
                .iter()
                .map(|n| {
                    d.get(n)
                        .cloned()
                        .ok_or_else(|| Error::UnknownNode(n.clone()))
                })
                .collect::<Result<_>>()?,
            None => vec![Vec::new(); names.len()],
        };
        let mut lookup: Vec<HashMap<String, u32>> = states
            .iter()
            .map(|st| {
                st.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i as u32))
                    .collect()
            })
            .collect();
        let mut cells = Vec::new();
        for record in rdr.records() {
            let record = record?;
            for (i, field) in record.iter().enumerate() {
                let idx = match lookup[i].get(field) {
                    Some(&idx) => idx,
                    None if declared.is_none() => {
                        let idx = states[i].len() as u32;
                        states[i].push(field.to_string());
                        lookup[i].insert(field.to_string(), idx);
                        idx
                    }
                    None => {
                        return Err(Error::InvalidData(format!(
                            "unknown state `{field}` for `{}`",
                            names[i]
                        )))
                    }
                };
                cells.push(idx);
            }
        }
        // header-only input: give each variable a single placeholder state
        for st in states.iter_mut().filter(|st| st.is_empty()) {
            st.push(String::from("0"));
        }
        let mut ds = Self::new(names, states)?;
        ds.cells = cells;
        Ok(ds)
    }

    /// Writes CSV with state names in the body.
    pub fn to_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(&self.names)?;
        for row in 0..self.row_count() {
            wtr.write_record(
                self.row(row)
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| self.states[i][c as usize].as_str()),
            )?;
        }
        wtr.flush()?;
        Ok(())
    }
}
