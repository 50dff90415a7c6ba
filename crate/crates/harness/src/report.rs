//! Deterministic output formatting shared by the command-line tools.

use std::io::Write;

use anyhow::Result;

use crate::suite::CheckOutcome;

/// Fixed scientific rendering for real-valued CSV cells, so repeat runs
/// with identical inputs produce byte-identical output.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes one CSV table with the given header.
pub fn write_csv<W: Write>(sink: W, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// One line per verification check, machine-scrapable by its PASS/FAIL
/// prefix.
pub fn outcome_line(outcome: &CheckOutcome) -> String {
    format!(
        "{} {} ({}) [{:.2}s] {}",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.module,
        outcome.seconds,
        outcome.detail
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_rendering_is_fixed_width_scientific() {
        assert_eq!(real(0.25), "2.5000000000000000e-1");
        assert_eq!(real(2500.0), "2.5000000000000000e3");
        assert_eq!(real(0.0), "0.0000000000000000e0");
        assert_eq!(real(-1.0 / 3.0), "-3.3333333333333331e-1");
    }

    #[test]
    fn csv_rendering() {
        let mut buf = Vec::new();
        write_csv(
            &mut buf,
            &["k", "mass"],
            &[
                vec!["1".to_string(), real(0.5)],
                vec!["3".to_string(), real(0.5)],
            ],
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "k,mass\n1,5.0000000000000000e-1\n3,5.0000000000000000e-1\n"
        );
    }

    #[test]
    fn outcome_lines_carry_verdict_and_module() {
        let outcome = CheckOutcome {
            name: "pmf_enumeration",
            module: "chain",
            passed: true,
            detail: "max TV 0.0e0".to_string(),
            seconds: 0.25,
        };
        let line = outcome_line(&outcome);
        assert!(line.starts_with("PASS pmf_enumeration (chain)"));
        assert!(line.contains("max TV"));
    }
}
