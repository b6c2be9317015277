//! Standard filter coefficient tables, laid out as `[dec_lo, dec_hi, rec_lo, rec_hi]`.

#![allow(clippy::approx_constant, clippy::excessive_precision, clippy::unreadable_literal)]

#[rustfmt::skip]
pub(super) const HAAR: [[f64; 2]; 4] = [
    [
        0.7071067811865476, 0.7071067811865476,
    ],
    [
        -0.7071067811865476, 0.7071067811865476,
    ],
    [
        0.7071067811865476, 0.7071067811865476,
    ],
    [
        0.7071067811865476, -0.7071067811865476,
    ],
];

#[rustfmt::skip]
pub(super) const DB4: [[f64; 8]; 4] = [
    [
        -0.010597401785069032, 0.0328830116668852, 0.030841381835560764,
        -0.18703481171909309, -0.027983769416859854, 0.6308807679298589,
        0.7148465705529157, 0.2303778133088965,
    ],
    [
        -0.2303778133088965, 0.7148465705529157, -0.6308807679298589,
        -0.027983769416859854, 0.18703481171909309, 0.030841381835560764,
        -0.0328830116668852, -0.010597401785069032,
    ],
    [
        0.2303778133088965, 0.7148465705529157, 0.6308807679298589,
        -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
        0.0328830116668852, -0.010597401785069032,
    ],
    [
        -0.010597401785069032, -0.0328830116668852, 0.030841381835560764,
        0.18703481171909309, -0.027983769416859854, -0.6308807679298589,
        0.7148465705529157, -0.2303778133088965,
    ],
];

#[rustfmt::skip]
pub(super) const DB10: [[f64; 20]; 4] = [
    [
        -1.3264202894521244e-05, 9.358867032006959e-05, -0.00011646685512928545,
        -0.0006858566949597116, 0.001992405295185056, 0.001395351747052901,
        -0.010733175483330575, 0.0036065535669561697, 0.033212674059341,
        -0.029457536821875813, -0.07139414716639708, 0.09305736460357235,
        0.12736934033579325, -0.19594627437737705, -0.24984642432731538,
        0.2811723436605775, 0.6884590394536035, 0.5272011889317256,
        0.1881768000776915, 0.026670057900555554,
    ],
    [
        -0.026670057900555554, 0.1881768000776915, -0.5272011889317256,
        0.6884590394536035, -0.2811723436605775, -0.24984642432731538,
        0.19594627437737705, 0.12736934033579325, -0.09305736460357235,
        -0.07139414716639708, 0.029457536821875813, 0.033212674059341,
        -0.0036065535669561697, -0.010733175483330575, -0.001395351747052901,
        0.001992405295185056, 0.0006858566949597116, -0.00011646685512928545,
        -9.358867032006959e-05, -1.3264202894521244e-05,
    ],
    [
        0.026670057900555554, 0.1881768000776915, 0.5272011889317256,
        0.6884590394536035, 0.2811723436605775, -0.24984642432731538,
        -0.19594627437737705, 0.12736934033579325, 0.09305736460357235,
        -0.07139414716639708, -0.029457536821875813, 0.033212674059341,
        0.0036065535669561697, -0.010733175483330575, 0.001395351747052901,
        0.001992405295185056, -0.0006858566949597116, -0.00011646685512928545,
        9.358867032006959e-05, -1.3264202894521244e-05,
    ],
    [
        -1.3264202894521244e-05, -9.358867032006959e-05, -0.00011646685512928545,
        0.0006858566949597116, 0.001992405295185056, -0.001395351747052901,
        -0.010733175483330575, -0.0036065535669561697, 0.033212674059341,
        0.029457536821875813, -0.07139414716639708, -0.09305736460357235,
        0.12736934033579325, 0.19594627437737705, -0.24984642432731538,
        -0.2811723436605775, 0.6884590394536035, -0.5272011889317256,
        0.1881768000776915, -0.026670057900555554,
    ],
];

#[rustfmt::skip]
pub(super) const COIF1: [[f64; 6]; 4] = [
    [
        -0.015655728135791993, -0.07273261951252645, 0.3848648468648578,
        0.8525720202116004, 0.3378976624574818, -0.07273261951252645,
    ],
    [
        0.07273261951252645, 0.3378976624574818, -0.8525720202116004,
        0.3848648468648578, 0.07273261951252645, -0.015655728135791993,
    ],
    [
        -0.07273261951252645, 0.3378976624574818, 0.8525720202116004,
        0.3848648468648578, -0.07273261951252645, -0.015655728135791993,
    ],
    [
        -0.015655728135791993, 0.07273261951252645, 0.3848648468648578,
        -0.8525720202116004, 0.3378976624574818, 0.07273261951252645,
    ],
];

#[rustfmt::skip]
pub(super) const COIF4: [[f64; 24]; 4] = [
    [
        -1.7849909144933469e-06, -3.259647940030751e-06, 3.1229861599195265e-05,
        6.233885431278719e-05, -0.0002599743371222568, -0.0005890202246332165,
        0.0012665610789256603, 0.0037514346971460866, -0.0056582838001308835,
        -0.015211728187697211, 0.02508225333794961, 0.03933442260558915,
        -0.09622042453595264, -0.06662747236681717, 0.43438603311435653,
        0.7822389344242826, 0.41530842700068227, -0.05607731960356926,
        -0.08126671024919373, 0.02668230466960483, 0.01606894713157503,
        -0.007346167936268051, -0.001629492425226786, 0.000892313902537003,
    ],
    [
        -0.000892313902537003, -0.001629492425226786, 0.007346167936268051,
        0.01606894713157503, -0.02668230466960483, -0.08126671024919373,
        0.05607731960356926, 0.41530842700068227, -0.7822389344242826,
        0.43438603311435653, 0.06662747236681717, -0.09622042453595264,
        -0.03933442260558915, 0.02508225333794961, 0.015211728187697211,
        -0.0056582838001308835, -0.0037514346971460866, 0.0012665610789256603,
        0.0005890202246332165, -0.0002599743371222568, -6.233885431278719e-05,
        3.1229861599195265e-05, 3.259647940030751e-06, -1.7849909144933469e-06,
    ],
    [
        0.000892313902537003, -0.001629492425226786, -0.007346167936268051,
        0.01606894713157503, 0.02668230466960483, -0.08126671024919373,
        -0.05607731960356926, 0.41530842700068227, 0.7822389344242826,
        0.43438603311435653, -0.06662747236681717, -0.09622042453595264,
        0.03933442260558915, 0.02508225333794961, -0.015211728187697211,
        -0.0056582838001308835, 0.0037514346971460866, 0.0012665610789256603,
        -0.0005890202246332165, -0.0002599743371222568, 6.233885431278719e-05,
        3.1229861599195265e-05, -3.259647940030751e-06, -1.7849909144933469e-06,
    ],
    [
        -1.7849909144933469e-06, 3.259647940030751e-06, 3.1229861599195265e-05,
        -6.233885431278719e-05, -0.0002599743371222568, 0.0005890202246332165,
        0.0012665610789256603, -0.0037514346971460866, -0.0056582838001308835,
        0.015211728187697211, 0.02508225333794961, -0.03933442260558915,
        -0.09622042453595264, 0.06662747236681717, 0.43438603311435653,
        -0.7822389344242826, 0.41530842700068227, 0.05607731960356926,
        -0.08126671024919373, -0.02668230466960483, 0.01606894713157503,
        0.007346167936268051, -0.001629492425226786, -0.000892313902537003,
    ],
];

#[rustfmt::skip]
pub(super) const COIF5: [[f64; 30]; 4] = [
    [
        -9.604010112767894e-08, -1.6237995172048338e-07, 2.0612203985788783e-06,
        3.7007277113394796e-06, -2.1270221672515614e-05, -4.12198619242655e-05,
        0.00014035632812373243, 0.0003018579416682448, -0.0006375589261258812,
        -0.0016616273039298788, 0.0024315754425382886, 0.006761520220620417,
        -0.009159507338676163, -0.019758391600965465, 0.032674799467057355,
        0.041287530472117834, -0.10556315130733723, -0.06203775157498196,
        0.4379823066591634, 0.7742936228603274, 0.42157126673075435,
        -0.052046670253554764, -0.09192158806008609, 0.028169744270532353,
        0.023408322118927783, -0.010131584846900276, -0.00415931262757864,
        0.0021782943778456947, 0.0003585777411617577, -0.000212081862067494,
    ],
    [
        0.000212081862067494, 0.0003585777411617577, -0.0021782943778456947,
        -0.00415931262757864, 0.010131584846900276, 0.023408322118927783,
        -0.028169744270532353, -0.09192158806008609, 0.052046670253554764,
        0.42157126673075435, -0.7742936228603274, 0.4379823066591634,
        0.06203775157498196, -0.10556315130733723, -0.041287530472117834,
        0.032674799467057355, 0.019758391600965465, -0.009159507338676163,
        -0.006761520220620417, 0.0024315754425382886, 0.0016616273039298788,
        -0.0006375589261258812, -0.0003018579416682448, 0.00014035632812373243,
        4.12198619242655e-05, -2.1270221672515614e-05, -3.7007277113394796e-06,
        2.0612203985788783e-06, 1.6237995172048338e-07, -9.604010112767894e-08,
    ],
    [
        -0.000212081862067494, 0.0003585777411617577, 0.0021782943778456947,
        -0.00415931262757864, -0.010131584846900276, 0.023408322118927783,
        0.028169744270532353, -0.09192158806008609, -0.052046670253554764,
        0.42157126673075435, 0.7742936228603274, 0.4379823066591634,
        -0.06203775157498196, -0.10556315130733723, 0.041287530472117834,
        0.032674799467057355, -0.019758391600965465, -0.009159507338676163,
        0.006761520220620417, 0.0024315754425382886, -0.0016616273039298788,
        -0.0006375589261258812, 0.0003018579416682448, 0.00014035632812373243,
        -4.12198619242655e-05, -2.1270221672515614e-05, 3.7007277113394796e-06,
        2.0612203985788783e-06, -1.6237995172048338e-07, -9.604010112767894e-08,
    ],
    [
        -9.604010112767894e-08, 1.6237995172048338e-07, 2.0612203985788783e-06,
        -3.7007277113394796e-06, -2.1270221672515614e-05, 4.12198619242655e-05,
        0.00014035632812373243, -0.0003018579416682448, -0.0006375589261258812,
        0.0016616273039298788, 0.0024315754425382886, -0.006761520220620417,
        -0.009159507338676163, 0.019758391600965465, 0.032674799467057355,
        -0.041287530472117834, -0.10556315130733723, 0.06203775157498196,
        0.4379823066591634, -0.7742936228603274, 0.42157126673075435,
        0.052046670253554764, -0.09192158806008609, -0.028169744270532353,
        0.023408322118927783, 0.010131584846900276, -0.00415931262757864,
        -0.0021782943778456947, 0.0003585777411617577, 0.000212081862067494,
    ],
];

#[rustfmt::skip]
pub(super) const SYM4: [[f64; 8]; 4] = [
    [
        -0.07576571478927333, -0.02963552764599851, 0.49761866763201545,
        0.8037387518059161, 0.29785779560527736, -0.09921954357684722,
        -0.012603967262037833, 0.0322231006040427,
    ],
    [
        -0.0322231006040427, -0.012603967262037833, 0.09921954357684722,
        0.29785779560527736, -0.8037387518059161, 0.49761866763201545,
        0.02963552764599851, -0.07576571478927333,
    ],
    [
        0.0322231006040427, -0.012603967262037833, -0.09921954357684722,
        0.29785779560527736, 0.8037387518059161, 0.49761866763201545,
        -0.02963552764599851, -0.07576571478927333,
    ],
    [
        -0.07576571478927333, 0.02963552764599851, 0.49761866763201545,
        -0.8037387518059161, 0.29785779560527736, 0.09921954357684722,
        -0.012603967262037833, -0.0322231006040427,
    ],
];

#[rustfmt::skip]
pub(super) const SYM10: [[f64; 20]; 4] = [
    [
        0.0007701598091144901, 9.563267072289475e-05, -0.008641299277022422,
        -0.0014653825813050513, 0.0459272392310922, 0.011609893903711381,
        -0.15949427888491757, -0.07088053578324385, 0.47169066693843925,
        0.7695100370211071, 0.38382676106708546, -0.03553674047381755,
        -0.0319900568824278, 0.04999497207737669, 0.005764912033581909,
        -0.02035493981231129, -0.0008043589320165449, 0.004593173585311828,
        5.7036083618494284e-05, -0.0004593294210046588,
    ],
    [
        0.0004593294210046588, 5.7036083618494284e-05, -0.004593173585311828,
        -0.0008043589320165449, 0.02035493981231129, 0.005764912033581909,
        -0.04999497207737669, -0.0319900568824278, 0.03553674047381755,
        0.38382676106708546, -0.7695100370211071, 0.47169066693843925,
        0.07088053578324385, -0.15949427888491757, -0.011609893903711381,
        0.0459272392310922, 0.0014653825813050513, -0.008641299277022422,
        -9.563267072289475e-05, 0.0007701598091144901,
    ],
    [
        -0.0004593294210046588, 5.7036083618494284e-05, 0.004593173585311828,
        -0.0008043589320165449, -0.02035493981231129, 0.005764912033581909,
        0.04999497207737669, -0.0319900568824278, -0.03553674047381755,
        0.38382676106708546, 0.7695100370211071, 0.47169066693843925,
        -0.07088053578324385, -0.15949427888491757, 0.011609893903711381,
        0.0459272392310922, -0.0014653825813050513, -0.008641299277022422,
        9.563267072289475e-05, 0.0007701598091144901,
    ],
    [
        0.0007701598091144901, -9.563267072289475e-05, -0.008641299277022422,
        0.0014653825813050513, 0.0459272392310922, -0.011609893903711381,
        -0.15949427888491757, 0.07088053578324385, 0.47169066693843925,
        -0.7695100370211071, 0.38382676106708546, 0.03553674047381755,
        -0.0319900568824278, -0.04999497207737669, 0.005764912033581909,
        0.02035493981231129, -0.0008043589320165449, -0.004593173585311828,
        5.7036083618494284e-05, 0.0004593294210046588,
    ],
];

#[rustfmt::skip]
pub(super) const BIOR2_2: [[f64; 6]; 4] = [
    [
        0.0, -0.1767766952966369, 0.3535533905932738,
        1.0606601717798212, 0.3535533905932738, -0.1767766952966369,
    ],
    [
        -0.0, 0.3535533905932738, -0.7071067811865476,
        0.3535533905932738, -0.0, 0.0,
    ],
    [
        0.0, 0.3535533905932738, 0.7071067811865476,
        0.3535533905932738, 0.0, 0.0,
    ],
    [
        0.0, 0.1767766952966369, 0.3535533905932738,
        -1.0606601717798212, 0.3535533905932738, 0.1767766952966369,
    ],
];

#[rustfmt::skip]
pub(super) const BIOR2_4: [[f64; 10]; 4] = [
    [
        0.0, 0.03314563036811941, -0.06629126073623882,
        -0.1767766952966369, 0.4198446513295126, 0.9943689110435825,
        0.4198446513295126, -0.1767766952966369, -0.06629126073623882,
        0.03314563036811941,
    ],
    [
        -0.0, 0.0, -0.0,
        0.3535533905932738, -0.7071067811865476, 0.3535533905932738,
        -0.0, 0.0, -0.0,
        0.0,
    ],
    [
        0.0, 0.0, 0.0,
        0.3535533905932738, 0.7071067811865476, 0.3535533905932738,
        0.0, 0.0, 0.0,
        0.0,
    ],
    [
        0.0, -0.03314563036811941, -0.06629126073623882,
        0.1767766952966369, 0.4198446513295126, -0.9943689110435825,
        0.4198446513295126, 0.1767766952966369, -0.06629126073623882,
        -0.03314563036811941,
    ],
];

#[rustfmt::skip]
pub(super) const BIOR3_3: [[f64; 8]; 4] = [
    [
        0.06629126073623882, -0.1988737822087165, -0.15467960838455727,
        0.9943689110435825, 0.9943689110435825, -0.15467960838455727,
        -0.1988737822087165, 0.06629126073623882,
    ],
    [
        -0.0, 0.0, -0.1767766952966369,
        0.5303300858899106, -0.5303300858899106, 0.1767766952966369,
        -0.0, 0.0,
    ],
    [
        0.0, 0.0, 0.1767766952966369,
        0.5303300858899106, 0.5303300858899106, 0.1767766952966369,
        0.0, 0.0,
    ],
    [
        0.06629126073623882, 0.1988737822087165, -0.15467960838455727,
        -0.9943689110435825, 0.9943689110435825, 0.15467960838455727,
        -0.1988737822087165, -0.06629126073623882,
    ],
];

#[rustfmt::skip]
pub(super) const BIOR3_7: [[f64; 16]; 4] = [
    [
        0.0030210861012608843, -0.009063258303782653, -0.01683176542131064,
        0.074663985074019, 0.03133297870736289, -0.301159125922835,
        -0.02649924094534547, 0.9516421218971786, 0.9516421218971786,
        -0.02649924094534547, -0.301159125922835, 0.03133297870736289,
        0.074663985074019, -0.01683176542131064, -0.009063258303782653,
        0.0030210861012608843,
    ],
    [
        -0.0, 0.0, -0.0,
        0.0, -0.0, 0.0,
        -0.1767766952966369, 0.5303300858899106, -0.5303300858899106,
        0.1767766952966369, -0.0, 0.0,
        -0.0, 0.0, -0.0,
        0.0,
    ],
    [
        0.0, 0.0, 0.0,
        0.0, 0.0, 0.0,
        0.1767766952966369, 0.5303300858899106, 0.5303300858899106,
        0.1767766952966369, 0.0, 0.0,
        0.0, 0.0, 0.0,
        0.0,
    ],
    [
        0.0030210861012608843, 0.009063258303782653, -0.01683176542131064,
        -0.074663985074019, 0.03133297870736289, 0.301159125922835,
        -0.02649924094534547, -0.9516421218971786, 0.9516421218971786,
        0.02649924094534547, -0.301159125922835, -0.03133297870736289,
        0.074663985074019, 0.01683176542131064, -0.009063258303782653,
        -0.0030210861012608843,
    ],
];

#[rustfmt::skip]
pub(super) const BIOR3_9: [[f64; 20]; 4] = [
    [
        -0.0006797443727836989, 0.002039233118351097, 0.005060319219611981,
        -0.020618912641105536, -0.014112787930175844, 0.09913478249423216,
        0.012300136269419315, -0.32019196836077857, 0.0020500227115698858,
        0.9421257006782068, 0.9421257006782068, 0.0020500227115698858,
        -0.32019196836077857, 0.012300136269419315, 0.09913478249423216,
        -0.014112787930175844, -0.020618912641105536, 0.005060319219611981,
        0.002039233118351097, -0.0006797443727836989,
    ],
    [
        -0.0, 0.0, -0.0,
        0.0, -0.0, 0.0,
        -0.0, 0.0, -0.1767766952966369,
        0.5303300858899106, -0.5303300858899106, 0.1767766952966369,
        -0.0, 0.0, -0.0,
        0.0, -0.0, 0.0,
        -0.0, 0.0,
    ],
    [
        0.0, 0.0, 0.0,
        0.0, 0.0, 0.0,
        0.0, 0.0, 0.1767766952966369,
        0.5303300858899106, 0.5303300858899106, 0.1767766952966369,
        0.0, 0.0, 0.0,
        0.0, 0.0, 0.0,
        0.0, 0.0,
    ],
    [
        -0.0006797443727836989, -0.002039233118351097, 0.005060319219611981,
        0.020618912641105536, -0.014112787930175844, -0.09913478249423216,
        0.012300136269419315, 0.32019196836077857, 0.0020500227115698858,
        -0.9421257006782068, 0.9421257006782068, -0.0020500227115698858,
        -0.32019196836077857, -0.012300136269419315, 0.09913478249423216,
        0.014112787930175844, -0.020618912641105536, -0.005060319219611981,
        0.002039233118351097, 0.0006797443727836989,
    ],
];

#[rustfmt::skip]
pub(super) const BIOR6_8: [[f64; 18]; 4] = [
    [
        0.0, 0.0019088317364812906, -0.0019142861290887667,
        -0.016990639867602342, 0.01193456527972926, 0.04973290349094079,
        -0.07726317316720414, -0.09405920349573646, 0.4207962846098268,
        0.8259229974584023, 0.4207962846098268, -0.09405920349573646,
        -0.07726317316720414, 0.04973290349094079, 0.01193456527972926,
        -0.016990639867602342, -0.0019142861290887667, 0.0019088317364812906,
    ],
    [
        -0.0, 0.0, -0.0,
        0.014426282505624435, -0.014467504896790148, -0.07872200106262882,
        0.04036797903033992, 0.41784910915027457, -0.7589077294536541,
        0.41784910915027457, 0.04036797903033992, -0.07872200106262882,
        -0.014467504896790148, 0.014426282505624435, -0.0,
        0.0, -0.0, 0.0,
    ],
    [
        0.0, 0.0, 0.0,
        0.014426282505624435, 0.014467504896790148, -0.07872200106262882,
        -0.04036797903033992, 0.41784910915027457, 0.7589077294536541,
        0.41784910915027457, -0.04036797903033992, -0.07872200106262882,
        0.014467504896790148, 0.014426282505624435, 0.0,
        0.0, 0.0, 0.0,
    ],
    [
        0.0, -0.0019088317364812906, -0.0019142861290887667,
        0.016990639867602342, 0.01193456527972926, -0.04973290349094079,
        -0.07726317316720414, 0.09405920349573646, 0.4207962846098268,
        -0.8259229974584023, 0.4207962846098268, 0.09405920349573646,
        -0.07726317316720414, -0.04973290349094079, 0.01193456527972926,
        0.016990639867602342, -0.0019142861290887667, -0.0019088317364812906,
    ],
];

#[rustfmt::skip]
pub(super) const RBIO3_7: [[f64; 16]; 4] = [
    [
        0.0, 0.0, 0.0,
        0.0, 0.0, 0.0,
        0.1767766952966369, 0.5303300858899106, 0.5303300858899106,
        0.1767766952966369, 0.0, 0.0,
        0.0, 0.0, 0.0,
        0.0,
    ],
    [
        -0.0030210861012608843, -0.009063258303782653, 0.01683176542131064,
        0.074663985074019, -0.03133297870736289, -0.301159125922835,
        0.02649924094534547, 0.9516421218971786, -0.9516421218971786,
        -0.02649924094534547, 0.301159125922835, 0.03133297870736289,
        -0.074663985074019, -0.01683176542131064, 0.009063258303782653,
        0.0030210861012608843,
    ],
    [
        0.0030210861012608843, -0.009063258303782653, -0.01683176542131064,
        0.074663985074019, 0.03133297870736289, -0.301159125922835,
        -0.02649924094534547, 0.9516421218971786, 0.9516421218971786,
        -0.02649924094534547, -0.301159125922835, 0.03133297870736289,
        0.074663985074019, -0.01683176542131064, -0.009063258303782653,
        0.0030210861012608843,
    ],
    [
        0.0, -0.0, 0.0,
        -0.0, 0.0, -0.0,
        0.1767766952966369, -0.5303300858899106, 0.5303300858899106,
        -0.1767766952966369, 0.0, -0.0,
        0.0, -0.0, 0.0,
        -0.0,
    ],
];

#[rustfmt::skip]
pub(super) const RBIO6_8: [[f64; 18]; 4] = [
    [
        0.0, 0.0, 0.0,
        0.0, 0.014426282505624435, 0.014467504896790148,
        -0.07872200106262882, -0.04036797903033992, 0.41784910915027457,
        0.7589077294536541, 0.41784910915027457, -0.04036797903033992,
        -0.07872200106262882, 0.014467504896790148, 0.014426282505624435,
        0.0, 0.0, 0.0,
    ],
    [
        -0.0019088317364812906, -0.0019142861290887667, 0.016990639867602342,
        0.01193456527972926, -0.04973290349094079, -0.07726317316720414,
        0.09405920349573646, 0.4207962846098268, -0.8259229974584023,
        0.4207962846098268, 0.09405920349573646, -0.07726317316720414,
        -0.04973290349094079, 0.01193456527972926, 0.016990639867602342,
        -0.0019142861290887667, -0.0019088317364812906, 0.0,
    ],
    [
        0.0019088317364812906, -0.0019142861290887667, -0.016990639867602342,
        0.01193456527972926, 0.04973290349094079, -0.07726317316720414,
        -0.09405920349573646, 0.4207962846098268, 0.8259229974584023,
        0.4207962846098268, -0.09405920349573646, -0.07726317316720414,
        0.04973290349094079, 0.01193456527972926, -0.016990639867602342,
        -0.0019142861290887667, 0.0019088317364812906, 0.0,
    ],
    [
        0.0, -0.0, 0.0,
        -0.0, 0.014426282505624435, -0.014467504896790148,
        -0.07872200106262882, 0.04036797903033992, 0.41784910915027457,
        -0.7589077294536541, 0.41784910915027457, 0.04036797903033992,
        -0.07872200106262882, -0.014467504896790148, 0.014426282505624435,
        -0.0, 0.0, -0.0,
    ],
];
