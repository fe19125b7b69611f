use std::io;

use anyhow::Context;

use seedlex::lexicon::{read_lexicon, LexiconEntry};

use super::InspectArgs;
use crate::config::require_file;

/// Print `rank,word,valence,seed,sentiment` for the top and bottom `k`
/// entries, ranked by valence.
pub fn inspect(args: &InspectArgs) -> anyhow::Result<()> {
    require_file(&args.lexicon, "lexicon")?;
    let lexicon = read_lexicon(&args.lexicon)
        .with_context(|| format!("reading {}", args.lexicon.display()))?;
    let entries: Vec<&LexiconEntry> = lexicon
        .entries()
        .iter()
        .filter(|e| args.with_seeds || !e.seed)
        .collect();
    let n = entries.len();
    let mut shown: Vec<usize> = (0..args.k.min(n)).collect();
    shown.extend(n.saturating_sub(args.k).max(args.k.min(n))..n);

    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(io::stdout().lock());
    out.write_record(["rank", "word", "valence", "seed", "sentiment"])?;
    for i in shown {
        let e = entries[i];
        out.write_record([
            (i + 1).to_string(),
            e.word.clone(),
            e.valence.to_string(),
            u8::from(e.seed).to_string(),
            e.pole.clone(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
