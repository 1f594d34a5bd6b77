use std::io::Write;
use std::path::{Path, PathBuf};

use dnacodes::Result;

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| dnacodes::Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Best-effort diagnostics on stderr; a closed stderr is not an error.
pub fn note(text: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{text}");
}
