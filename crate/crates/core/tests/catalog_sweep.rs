use crsym::catalog::{build_model, default_grid, expected_profile, sweep_table, ModelSpec, RowId};
use crsym::classify::match_table_row;
use crsym::report::analyze;
use crsym::Error;

#[test]
fn default_grid_passes() {
    let lines = sweep_table(&default_grid());
    let failed: Vec<_> = lines.iter().filter(|l| !l.pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn every_row_default_builds_and_matches_its_row() {
    for row in RowId::ALL {
        let spec = ModelSpec::new(row);
        let p = build_model(&spec).unwrap_or_else(|e| panic!("{row}: {e}"));
        let a = analyze(&p).unwrap();
        let expected = expected_profile(&spec).unwrap();
        assert_eq!(a.row.dim_g, expected.dim_g, "{row}");
        assert_eq!(a.row.dim_g, 1 + a.row.dim_gt + a.row.dim_g0 + a.row.dim_gc + a.row.dim_gn + a.row.dim_g1, "{row}");
        if let Some(m) = match_table_row(&a.row) {
            let name = m.to_string();
            let same = row.to_string() == name || (row == RowId::GN10 && name == "T1");
            assert!(same || name == "SOLITARY_EXOTIC", "{row} matched {name}");
        }
    }
}

#[test]
fn out_of_range_parameters_are_rejected() {
    let spec = ModelSpec::new(RowId::T1).with("alpha", 1);
    assert!(matches!(build_model(&spec), Err(Error::InvalidParams(_))));
}
