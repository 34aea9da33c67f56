//! Emit an input document, parse it back and run the CLI pipeline in process.

use nilg2::cli::{example_document, execute, Command, InputDocument, Options, OutputFormat};
use nilg2::Scalar;

fn main() -> nilg2::Result<()> {
    let text = example_document("n32", &[Scalar::exact(1, 2)])?;
    print!("{text}");
    let doc = InputDocument::parse(&text)?;
    println!("mode: {}", doc.mode().name());
    let path = std::env::temp_dir().join("nilg2_n32.toml");
    std::fs::write(&path, &text).map_err(|e| nilg2::Error::Parse(e.to_string()))?;
    let out = execute(
        &Command::Classify(path),
        &Options {
            format: OutputFormat::Human,
            ..Options::default()
        },
    );
    print!("{}", out.stdout);
    println!("exit code {}", out.code);
    Ok(())
}
