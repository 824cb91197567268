use crate::CliError;

/// Fixed-format rows; floats carry 17 significant digits.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    pub fn render(&self, meta: &[String]) -> Result<Vec<u8>, CliError> {
        let mut buf = Vec::new();
        for line in meta {
            buf.extend_from_slice(format!("# {line}\n").as_bytes());
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(buf);
        w.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.into_error()))
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

/// Short machine-readable label for a library error.
pub fn status_of(e: &kgring_core::Error) -> &'static str {
    use kgring_core::Error as E;
    match e {
        E::NoRealChannel { .. } => "no-real-channel",
        E::EnergyDomain { .. } => "energy-domain",
        E::Convergence { .. } => "no-convergence",
        E::NotFound(_) => "not-found",
        E::NoRealK => "no-real-k",
        E::NoPhysicalBranch => "no-physical-branch",
        E::Accuracy { .. } => "inaccurate",
        E::ParameterDomain(_) | E::IndexOutOfRange { .. } | E::OracleRange { .. } => "bad-parameter",
        E::Integration(_) => "integration",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_metadata_and_rows() {
        let mut t = Table::new(&["x", "status"]);
        t.push(vec![real(0.1), "ok".into()]);
        let out = String::from_utf8(t.render(&["tool 1".into()]).unwrap()).unwrap();
        assert_eq!(out, "# tool 1\nx,status\n1.0000000000000001e-1,ok\n");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [std::f64::consts::PI, -1e-300, 6.02214076e23, 0.0] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(real(f64::NAN), "");
    }
}
