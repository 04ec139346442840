//! Fixture checks for the per-net rotation corrections.
//!
//! The generic hinge fold must reproduce the expected per-net correction
//! table for the eleven nets: the Front-face correction groups, the Back
//! corrections of 1-4-1-4/5, the Left corrections of the 2-3-1 family,
//! 3-3 and 2-2-2, and the special Top correction of 2-2-2. All entries are
//! quarter turns relative to the pivot net 1-4-1-0; the one global sign is
//! calibrated from 1-4-1-3's Front.

use spatialkit_core::patterns::{canonical_net, FaceName, NetName, FACES, NET_NAMES};

fn correction(net: NetName, face: FaceName) -> u8 {
    canonical_net(net).rotation_of(face)
}

#[test]
fn pivot_needs_no_corrections() {
    for face in FACES {
        assert_eq!(correction(NetName::N1410, face), 0, "{face:?}");
    }
}

#[test]
fn front_correction_groups() {
    // R_z(-90) group: a single quarter turn in one direction.
    let q_minus = correction(NetName::N1413, FaceName::Front);
    assert!(q_minus == 1 || q_minus == 3, "1-4-1-3 Front must be a quarter turn");
    // R_z(+90) group: the opposite quarter turn.
    let q_plus = 4 - q_minus;

    for net in [NetName::N1411, NetName::N1414, NetName::N2311, NetName::N222] {
        assert_eq!(correction(net, FaceName::Front), q_plus, "{net:?} Front");
    }
    for net in [NetName::N1412, NetName::N1415, NetName::N2312, NetName::N33] {
        assert_eq!(correction(net, FaceName::Front), 2, "{net:?} Front");
    }
    assert_eq!(correction(NetName::N2310, FaceName::Front), 0);
}

#[test]
fn back_corrections_only_for_offset_back_nets() {
    let q_minus = correction(NetName::N1413, FaceName::Front);
    for net in [NetName::N1414, NetName::N1415] {
        assert_eq!(correction(net, FaceName::Back), q_minus, "{net:?} Back");
    }
    for net in [
        NetName::N1410,
        NetName::N1411,
        NetName::N1412,
        NetName::N1413,
    ] {
        assert_eq!(correction(net, FaceName::Back), 0, "{net:?} Back");
    }
}

#[test]
fn left_corrections_for_non_band_left_nets() {
    let q_minus = correction(NetName::N1413, FaceName::Front);
    for net in [
        NetName::N2310,
        NetName::N2311,
        NetName::N2312,
        NetName::N33,
        NetName::N222,
    ] {
        assert_eq!(correction(net, FaceName::Left), q_minus, "{net:?} Left");
    }
    for net in [
        NetName::N1410,
        NetName::N1411,
        NetName::N1412,
        NetName::N1413,
        NetName::N1414,
        NetName::N1415,
    ] {
        assert_eq!(correction(net, FaceName::Left), 0, "{net:?} Left");
    }
}

#[test]
fn top_correction_only_for_222() {
    let q_minus = correction(NetName::N1413, FaceName::Front);
    assert_eq!(correction(NetName::N222, FaceName::Top), q_minus);
    for net in NET_NAMES {
        if net != NetName::N222 {
            assert_eq!(correction(net, FaceName::Top), 0, "{net:?} Top");
        }
    }
}

#[test]
fn bottom_and_right_never_corrected() {
    for net in NET_NAMES {
        assert_eq!(correction(net, FaceName::Bottom), 0, "{net:?} Bottom");
        assert_eq!(correction(net, FaceName::Right), 0, "{net:?} Right");
    }
}

/// Full dump of every (net, face) correction so a regression is obvious.
#[test]
fn corrections_are_exactly_the_table() {
    let q = correction(NetName::N1413, FaceName::Front);
    let p = 4 - q;
    let mut expected: Vec<(NetName, FaceName, u8)> = Vec::new();
    for net in NET_NAMES {
        for face in FACES {
            let val = match (net, face) {
                (NetName::N1411 | NetName::N1414 | NetName::N2311 | NetName::N222, FaceName::Front) => p,
                (NetName::N1412 | NetName::N1415 | NetName::N2312 | NetName::N33, FaceName::Front) => 2,
                (NetName::N1413, FaceName::Front) => q,
                (NetName::N1414 | NetName::N1415, FaceName::Back) => q,
                (
                    NetName::N2310 | NetName::N2311 | NetName::N2312 | NetName::N33 | NetName::N222,
                    FaceName::Left,
                ) => q,
                (NetName::N222, FaceName::Top) => q,
                _ => 0,
            };
            expected.push((net, face, val));
        }
    }
    for (net, face, val) in expected {
        assert_eq!(correction(net, face), val, "{net:?} {face:?}");
    }
}
