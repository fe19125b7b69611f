use std::io::Write;

use anyhow::Context;

use seedlex::lexicon::{compare_lexicons, read_lexicon, RESIDUAL_THRESHOLDS};

use super::CompareArgs;
use crate::config::{require_file, RunConfig};
use crate::output::{ensure_dir, write_file};

pub fn compare(config: &RunConfig, args: &CompareArgs) -> anyhow::Result<()> {
    require_file(&args.a, "lexicon")?;
    require_file(&args.b, "lexicon")?;
    let a = read_lexicon(&args.a).with_context(|| format!("reading {}", args.a.display()))?;
    let b = read_lexicon(&args.b).with_context(|| format!("reading {}", args.b.display()))?;
    let report = compare_lexicons(&a, &b, !args.include_seeds)?;

    let mut metrics: Vec<(String, f64)> = vec![
        ("words_a".into(), report.words_a as f64),
        ("words_b".into(), report.words_b as f64),
        ("shared".into(), report.shared as f64),
        ("overlap".into(), report.overlap),
    ];
    if let Some(agreement) = report.agreement {
        metrics.push(("sign_agreement".into(), agreement));
    }
    if let Some(fit) = &report.fit {
        metrics.push(("slope".into(), fit.slope));
        metrics.push(("intercept".into(), fit.intercept));
        metrics.push(("r_squared".into(), fit.r_squared));
        for t in RESIDUAL_THRESHOLDS {
            metrics.push((format!("residuals_above:{t}"), fit.count_beyond(t) as f64));
        }
    }

    let dir = ensure_dir(&config.output_dir())?;
    write_file(&dir.join("compare.csv"), |w| {
        writeln!(w, "metric,value")?;
        for (m, v) in &metrics {
            writeln!(w, "{m},{v}")?;
        }
        Ok(())
    })?;
    write_file(&dir.join("compare_residuals.csv"), |w| {
        let mut out = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        out.write_record(["word", "valence_a", "valence_b", "residual"])?;
        for r in report.fit.iter().flat_map(|f| &f.residuals) {
            out.write_record([
                r.word.clone(),
                r.valence_a.to_string(),
                r.valence_b.to_string(),
                r.residual.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    })?;

    for (m, v) in &metrics {
        println!("{m}: {v}");
    }
    Ok(())
}
