use std::env;
use std::path::PathBuf;

use nilqa_core::{Error, Result, TableData};

pub const DATA_DIR_VAR: &str = "NILQA_DATA_DIR";
const FILE_NAME: &str = "exceptional_orbits.json";

/// Table data from `$NILQA_DATA_DIR`, then `data/` next to the executable,
/// then the copy built into the library.
pub fn load_tables() -> Result<TableData> {
    if let Some(dir) = env::var_os(DATA_DIR_VAR) {
        let path = PathBuf::from(dir).join(FILE_NAME);
        if !path.is_file() {
            return Err(Error::Data(format!("{} not found", path.display())));
        }
        return TableData::load(&path);
    }
    if let Some(path) = beside_executable() {
        if path.is_file() {
            return TableData::load(&path);
        }
    }
    Ok(TableData::bundled())
}

fn beside_executable() -> Option<PathBuf> {
    let exe = env::current_exe().ok()?;
    Some(exe.parent()?.join("data").join(FILE_NAME))
}
