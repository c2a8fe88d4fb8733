//! User-supplied mapping classes from a JSON array of endomorphism entries.

use std::collections::BTreeMap;
use std::path::Path;

use torelli::schema::EndoDoc;
use torelli::surface::SurfaceEndo;

/// Loads and validates every entry. An empty file gives no entries. Library
/// names may be redefined only by the same images.
pub fn load_user_endos(
    path: &Path,
    genus: usize,
    library: &BTreeMap<String, SurfaceEndo>,
) -> Result<BTreeMap<String, SurfaceEndo>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if text.trim().is_empty() {
        return Ok(BTreeMap::new());
    }
    let docs: Vec<EndoDoc> = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = BTreeMap::new();
    for d in docs {
        let name = d.name.clone();
        let ok_name = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok_name {
            return Err(format!("entry name `{name}` is not a valid word name"));
        }
        if d.genus != genus {
            return Err(format!("entry `{name}` has genus {} but the run uses genus {genus}", d.genus));
        }
        let h = d.value().map_err(|e| format!("entry `{name}`: {e}"))?;
        if !h.validate_mapping_class() {
            return Err(format!("entry `{name}` does not fix the boundary; defect word {}", h.boundary_defect()));
        }
        if let Some(l) = library.get(&name) {
            if !l.images().zip(h.images()).all(|((_, x), (_, y))| x == y) {
                return Err(format!("entry `{name}` redefines a library twist with different images"));
            }
            continue;
        }
        if out.insert(name.clone(), h).is_some() {
            return Err(format!("entry `{name}` is defined twice"));
        }
    }
    Ok(out)
}
