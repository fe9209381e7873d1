//! Tables of every matching with its pair values, Max and Min.

use std::io::{self, Write};

use serde_json::json;

use crate::matching::{enumerate_matchings, evaluate, EvaluationRow, SortedInput};
use crate::semigroup::Element;

use super::OutputFormat;

/// Row label `1_n(k)`, prefixed `(#) ` for the symmetric matching.
pub fn row_label(n: usize, k: usize, symmetric: bool) -> String {
    let label = format!("1_{n}({k})");
    if symmetric {
        format!("(#) {label}")
    } else {
        label
    }
}

fn title(input: &SortedInput) -> String {
    let elements: Vec<String> = input
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| format!("a_{} = {e}", i + 1))
        .collect();
    format!("2n = {} : {}", input.len(), elements.join(", "))
}

fn pair_expression(input: &SortedInput, row: &EvaluationRow, k: usize) -> String {
    let (i, j) = row.matching.pairs()[k];
    format!(
        "{} {} {} = {}",
        input.get(i),
        input.carrier().symbol(),
        input.get(j),
        row.pair_values[k]
    )
}

fn operation_heading(input: &SortedInput) -> &'static str {
    if input.carrier().is_multiplicative() {
        "(product)"
    } else {
        "(sum)"
    }
}

/// Writes one row per enumerated matching, in enumeration order.
pub fn write_table(
    input: &SortedInput,
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    let n = input.n();
    match format {
        OutputFormat::Markdown => {
            writeln!(out, "{}", title(input))?;
            writeln!(out)?;
            let mut header = vec![operation_heading(input).to_string()];
            header.extend((1..=n).map(|k| format!("pair {k}")));
            header.extend(["Max".to_string(), "Min".to_string()]);
            writeln!(out, "| {} |", header.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(header.len()))?;
        }
        OutputFormat::Plain => {
            writeln!(out, "{}", title(input))?;
        }
        OutputFormat::Json => {}
    }

    let mut json_rows = Vec::new();
    for (idx, m) in enumerate_matchings(n).enumerate() {
        let row = evaluate(&m, input).expect("enumerated matching fits the input");
        let label = row_label(n, idx + 1, m.is_symmetric());
        let cells: Vec<String> = (0..n).map(|k| pair_expression(input, &row, k)).collect();
        match format {
            OutputFormat::Markdown => writeln!(
                out,
                "| {} | {} | {} | {} |",
                label,
                cells.join(" | "),
                row.max_value,
                row.min_value
            )?,
            OutputFormat::Plain => writeln!(
                out,
                "{}\t{}\t{}\t{}",
                label,
                cells.join("\t"),
                row.max_value,
                row.min_value
            )?,
            OutputFormat::Json => json_rows.push(json!({
                "label": label,
                "matching": m.to_string(),
                "symmetric": m.is_symmetric(),
                "pair_values": row.pair_values.iter().map(Element::to_string).collect::<Vec<_>>(),
                "max": row.max_value.to_string(),
                "min": row.min_value.to_string(),
            })),
        }
    }

    if format == OutputFormat::Json {
        let doc = json!({
            "carrier": input.carrier().to_string(),
            "elements": input.elements().iter().map(Element::to_string).collect::<Vec<_>>(),
            "rows": json_rows,
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("json value")
        )?;
    }
    Ok(())
}
