//! Input resolution: map and orientation arguments accept a file path or a
//! bundled fixture reference `fixture:NAME`.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use schnyder::fixtures;
use schnyder::map::{Orientation, SurfaceMap};

use crate::formats;

pub fn load_map(spec: &str) -> Result<SurfaceMap> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        return fixtures::map_by_name(name)
            .or_else(|| fixtures::orientation_by_name(name).map(|(m, _)| m))
            .ok_or_else(|| anyhow!("unknown map fixture `{name}`"));
    }
    let text = fs::read_to_string(Path::new(spec)).with_context(|| format!("reading map `{spec}`"))?;
    formats::parse_map(&text).with_context(|| format!("parsing map `{spec}`"))
}

/// Orientation of `map` from a file or an orientation fixture. Fixture
/// orientations insist on their own base map.
pub fn load_orientation(map: &SurfaceMap, spec: &str) -> Result<Orientation> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        let (fixture_map, o) =
            fixtures::orientation_by_name(name).ok_or_else(|| anyhow!("unknown orientation fixture `{name}`"))?;
        if &fixture_map != map {
            bail!("orientation fixture `{name}` belongs to a different map");
        }
        return Ok(o);
    }
    let text =
        fs::read_to_string(Path::new(spec)).with_context(|| format!("reading orientation `{spec}`"))?;
    formats::parse_orientation(map, &text).with_context(|| format!("parsing orientation `{spec}`"))
}

pub fn parse_cycle(map: &SurfaceMap, spec: &str) -> Result<schnyder::map::Walk> {
    let darts = spec
        .split(',')
        .map(|tok| {
            let d: usize = tok.trim().parse().with_context(|| format!("bad dart `{tok}`"))?;
            if d >= map.dart_count() {
                bail!("dart {d} out of range");
            }
            Ok(schnyder::map::Dart(d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(schnyder::map::Walk::closed(darts))
}
