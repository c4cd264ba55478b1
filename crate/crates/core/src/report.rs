//! CSV output: descriptor dumps and key/value scalar tables.
//!
//! Numbers are written with 17 significant digits, negative zero is written
//! as zero, and lines end in `\n`, so identical inputs give identical bytes.

use std::io;

use csv::{Terminator, WriterBuilder};

use crate::network::{Component, NetworkState};

pub const DESCRIPTOR_HEADER: [&str; 6] = ["time", "qubit", "component", "pauli_string", "re", "im"];
pub const SCALAR_HEADER: [&str; 2] = ["key", "value"];

pub fn format_value(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

fn writer<W: io::Write>(w: W) -> csv::Writer<W> {
    WriterBuilder::new().terminator(Terminator::Any(b'\n')).from_writer(w)
}

/// One row per Pauli term of every descriptor component of every state.
pub fn write_descriptors<W: io::Write>(w: W, states: &[NetworkState]) -> io::Result<()> {
    let mut out = writer(w);
    out.write_record(DESCRIPTOR_HEADER)?;
    for s in states {
        let time = s.time().to_string();
        for (a, d) in (1..).zip(s.descriptors()) {
            let qubit = a.to_string();
            for u in Component::ALL {
                for (string, coeff) in d.component(u).terms() {
                    out.write_record([
                        time.as_str(),
                        qubit.as_str(),
                        u.name(),
                        &string.to_string(),
                        &format_value(coeff.re),
                        &format_value(coeff.im),
                    ])?;
                }
            }
        }
    }
    out.flush()
}

pub fn write_scalars<W: io::Write, K: AsRef<str>>(w: W, rows: &[(K, f64)]) -> io::Result<()> {
    let mut out = writer(w);
    out.write_record(SCALAR_HEADER)?;
    for (key, value) in rows {
        out.write_record([key.as_ref(), &format_value(*value)])?;
    }
    out.flush()
}
