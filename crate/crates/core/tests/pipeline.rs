use socode::construct::from_incidence_binary;
use socode::data;
use socode::design::{from_group_action, wso_search};
use socode::orbitmat::fixed_split;
use socode::perm::{format_group, parse_group};
use socode::{Design, OrbitMatrix, WsoCase};

#[test]
fn every_shipped_representation_is_m11() {
    for degree in [11, 12, 22, 55, 66, 165] {
        let g = data::m11_of_degree(degree).unwrap().unwrap();
        assert_eq!(g.degree(), degree);
        assert_eq!(g.order().unwrap(), 7920, "degree {degree}");
        assert!(g.is_transitive(), "degree {degree}");
    }
    assert!(data::m11_of_degree(13).unwrap().is_none());
}

#[test]
fn pair_stabilizer_has_order_144() {
    let g = data::m11_on_55().unwrap();
    assert_eq!(g.stabilizer(0).unwrap().order().unwrap(), 144);
}

#[test]
fn group_files_round_trip() {
    let g = data::m11_on_12();
    let back = parse_group(&format_group(&g)).unwrap();
    assert_eq!(back.generators(), g.generators());
    assert_eq!(back.order().unwrap(), 7920);
}

#[test]
fn twenty_two_point_search() {
    let g = data::m11_of_degree(22).unwrap().unwrap();
    let hits = wso_search(&g, 0, 2).unwrap();
    let labels: Vec<(WsoCase, String)> = hits.iter().map(|h| (h.case(), h.built.design.label())).collect();
    assert!(labels.contains(&(WsoCase::Case1, "1-(22,20,10)".to_string())));
    assert!(labels.contains(&(WsoCase::Case1, "1-(22,2,1)".to_string())));
    for h in &hits {
        assert_eq!(h.built.r_formula, h.built.design.validate().unwrap().1);
    }
}

#[test]
fn design_and_orbit_matrix_text_round_trip() {
    let g = data::m11_of_degree(22).unwrap().unwrap();
    let built = from_group_action(&g, 0, &[2]).unwrap();
    let d = Design::parse(&built.design.to_text()).unwrap();
    assert_eq!(d, built.design);
    let h = g.prime_order_subgroups(11).unwrap().remove(0);
    let om = OrbitMatrix::build(&d, &h).unwrap();
    let back = OrbitMatrix::parse(&om.to_text()).unwrap();
    assert_eq!(back.entries(), om.entries());
    assert_eq!(back.point_orbit_sizes(), om.point_orbit_sizes());
}

#[test]
fn fixed_split_recovers_orbit_counts() {
    let g = data::m11_of_degree(66).unwrap().unwrap();
    let d = wso_search(&g, 0, 2)
        .unwrap()
        .into_iter()
        .map(|h| h.built.design)
        .find(|d| d.label() == "1-(66,20,20)")
        .unwrap();
    let h = g.prime_order_subgroups(2).unwrap().remove(0);
    let fs = fixed_split(&d, &h, 2, 1).unwrap();
    let om = OrbitMatrix::build(&d, &h).unwrap();
    // every fixed block meets each point orbit as the orbit matrix says
    let fixed_points: usize = om.point_orbit_sizes().iter().filter(|&&s| s == 1).count();
    assert_eq!(fs.f1, fixed_points);
    for (i, row) in fs.om1.iter().enumerate() {
        assert_eq!(row.as_slice(), &om.entries()[i][..fixed_points]);
    }
}

#[test]
fn table_one_code_is_doubly_even() {
    let g = data::m11_of_degree(22).unwrap().unwrap();
    let d = from_group_action(&g, 0, &[2]).unwrap().design;
    let r = from_incidence_binary(&d, None).unwrap();
    assert_eq!(r.code.doubly_even_generators(), Some(true));
}
