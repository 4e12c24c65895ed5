use std::io::{Read, Write};
use std::path::Path;

use crate::correlations::CorrelationRecord;
use crate::error::Result;

pub const HEADER: [&str; 21] = [
    "alpha",
    "S_A",
    "S_R",
    "S_AntiR",
    "I_AR",
    "I_AAntiR",
    "I_RAntiR",
    "J_AR",
    "J_AAntiR",
    "D_AR",
    "D_AAntiR",
    "EF_RAntiR",
    "EF_RAntiR_alt",
    "S_AR",
    "S_AAntiR",
    "S_RAntiR",
    "N_used",
    "theta_AR",
    "phi_AR",
    "theta_AAntiR",
    "phi_AAntiR",
];

/// `%.12g`: twelve significant digits, trailing zeros removed.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    } else {
        format!("{}e{}", trim_fraction(mantissa), exp)
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn row(r: &CorrelationRecord) -> Vec<String> {
    let mut v = vec![format_g12(r.alpha)];
    v.extend(r.measures().iter().map(|&(_, x)| format_g12(x)));
    v.push(r.n_used.to_string());
    v.extend([r.theta_ar, r.phi_ar, r.theta_aantir, r.phi_aantir].map(format_g12));
    v
}

/// Version comment, header and one row per record.
pub fn write_csv<W: Write>(records: &[CorrelationRecord], mut out: W) -> Result<()> {
    writeln!(out, "# rindler-corr v{}", crate::VERSION)?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.write_record(row(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[CorrelationRecord], path: &Path) -> Result<()> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_csv(records, file)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CorrelationRecord>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let mut out = Vec::new();
    for r in rdr.deserialize() {
        out.push(r?);
    }
    Ok(out)
}
