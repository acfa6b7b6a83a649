//! Daubechies low-pass filters, orders 12..=20, frozen at generation
//! precision. Normalization: sum h_k = sqrt(2); the scaling relation is
//! phi(x) = sqrt(2) * sum_k h_k phi(2x - k) with support [0, 2N-1].

pub const DB12: [f64; 24] = [
    -1.5290717580685109027e-6,
    0.000012776952219379766587,
    -0.00002424154575703078403,
    -0.000088504109208204324208,
    0.00038865306282093144359,
    6.5451282125095955665e-6,
    -0.0021795036186277604716,
    0.0022486072409952376,
    0.0067114990087955091778,
    -0.012840825198300683295,
    -0.01221864906974828072,
    0.041546277495084440739,
    0.010849130255822184381,
    -0.096432120096507082027,
    0.0053595696743521503283,
    0.18247860592757967985,
    -0.023779257256069727684,
    -0.31617845375278553686,
    -0.044763885653774626668,
    0.51588647842781560876,
    0.6571987225793070893,
    0.37735513521421265709,
    0.10956627282118515461,
    0.013112257957229517507,
];

pub const DB13: [f64; 26] = [
    5.2200350984548646917e-7,
    -4.7004164793608683257e-6,
    0.000010441930571408137082,
    0.000030678537579325493466,
    -0.00016512898855650548946,
    0.000049251525126289461921,
    0.00093232613086726338622,
    -0.0013156739118922989366,
    -0.002761911234656862178,
    0.0072555894016175661945,
    0.0039239414487974162433,
    -0.023831420710323649032,
    0.0023799722540590788115,
    0.056139477100283428862,
    -0.02648840647534369464,
    -0.10580761818793432645,
    0.072948933656777163809,
    0.17947607942933984323,
    -0.12457673075081525894,
    -0.314972907711388633,
    0.08698572617964723731,
    0.58888957043121890807,
    0.61105585115878765282,
    0.3119963221604380634,
    0.082861243872902779644,
    0.009202133538962367973,
];

pub const DB14: [f64; 28] = [
    -1.7871399683113590763e-7,
    1.7249946753678127699e-6,
    -4.3897049017813941153e-6,
    -0.000010337209184570773947,
    0.000068755042526975096039,
    -0.000041777245770372597353,
    -0.00038683194731295448211,
    0.00070802115423552785864,
    0.001061691085606761843,
    -0.0038496388680221874458,
    -0.00074621898926838493718,
    0.012789493266333408962,
    -0.0056150495303569591332,
    -0.030185351540390635187,
    0.026981408307912916974,
    0.055237126259216044116,
    -0.071548955504046130736,
    -0.086748411568169689046,
    0.13998901658446070125,
    0.13839521386480659107,
    -0.21803352999327604476,
    -0.27168855227874804141,
    0.21867068775890652149,
    0.63118784910485677956,
    0.55430561794089383599,
    0.25485026779262135367,
    0.062364758849398898328,
    0.0064611534600879478182,
];

pub const DB15: [f64; 30] = [
    6.1333599133057520291e-8,
    -6.3168823258816644212e-7,
    1.8112704079405770838e-6,
    3.3629871817375798031e-6,
    -0.000028133296266047813648,
    0.000025792699155318936809,
    0.00015589648992059974795,
    -0.00035956524436246881216,
    -0.00037348235413761699201,
    0.0019433239803822115418,
    -0.00024175649076162428117,
    -0.0064877345603157449952,
    0.0051010003604075431697,
    0.015083918027835902363,
    -0.020810050169693081678,
    -0.025767007328439962586,
    0.054780550584507612689,
    0.033877143923507686209,
    -0.11112093603723169337,
    -0.039666176555790944484,
    0.19014671400712298235,
    0.065282952848772816923,
    -0.28888259656696564625,
    -0.19320413960914542871,
    0.33900253545473152769,
    0.64581314035742435818,
    0.49263177170813962361,
    0.20602386398699573154,
    0.046743394892766271892,
    0.0045385373615788988815,
];

pub const DB16: [f64; 32] = [
    -2.109339630100743097e-8,
    2.3087840868575458664e-7,
    -7.3636567854512055121e-7,
    -1.0435713423116065015e-6,
    0.000011336608661276258588,
    -0.000013945668988208893452,
    -0.000061035966214109358352,
    0.00017478724522533818038,
    0.00011424152003872239264,
    -0.00094102174935956758893,
    0.00040789698084971283624,
    0.0031280233812062688317,
    -0.0036442796214983899322,
    -0.0069900145634139166703,
    0.01399376885982873103,
    0.010297659640955969412,
    -0.036888397691730142334,
    -0.0075889743688577376385,
    0.075924236044276315821,
    -0.0062397227524748717657,
    -0.13238830556381039045,
    0.027340263752716041365,
    0.21119069394710428872,
    -0.027918208133028276683,
    -0.32706331052791770465,
    -0.089751089402489642857,
    0.44029025688635690004,
    0.63735633208378889863,
    0.43031272284600381374,
    0.1650642834888531179,
    0.03490771432367334641,
    0.0031892209253477380298,
];

pub const DB17: [f64; 34] = [
    7.2674929685616081109e-9,
    -8.4239484460026801788e-8,
    2.957700933316856755e-7,
    3.0165496099945574156e-7,
    -4.5059424772229881941e-6,
    6.9906009850767512732e-6,
    0.000023186813798745950845,
    -0.000082048032024533918391,
    -0.000025610109566548458827,
    0.00043946542776864367784,
    -0.0003281325194098379714,
    -0.0014368453048029761262,
    0.0023012052421535456243,
    0.0029679966915260948728,
    -0.0086029215203228548317,
    -0.0030429899813546370686,
    0.022733676583946270318,
    -0.0032709555358192937817,
    -0.046922438389269737333,
    0.022312336178103795953,
    0.08110598665416088508,
    -0.057091419631676927289,
    -0.12681569177828631109,
    0.10113548917747027215,
    0.19731058956501099279,
    -0.12659975221588270287,
    -0.32832074836396173609,
    0.027314970403293635004,
    0.51831576405693783933,
    0.61099661568462281819,
    0.37035072415264115045,
    0.13121490330782440658,
    0.025985393703606043389,
    0.0022418070010373128535,
];

pub const DB18: [f64; 36] = [
    -2.5079344549485982672e-9,
    3.0688358630451748009e-8,
    -1.1760987670282316985e-7,
    -7.691632689885176146e-8,
    1.7687129836276154559e-6,
    -3.3326344788858218888e-6,
    -8.5206025374466952039e-6,
    0.000037412378807400381811,
    -1.5359171235347246751e-7,
    -0.00019864855231174794858,
    0.0002135815619103406884,
    0.00062846568296514571256,
    -0.0013405962983361066295,
    -0.0011187326669924970728,
    0.0049433436054667381307,
    0.00011863003385811746573,
    -0.013051480946612001773,
    0.0062621679543057074852,
    0.0266707059264705903,
    -0.023733210395860001033,
    -0.044526141902982324716,
    0.057051247738536884121,
    0.064887216211905442819,
    -0.10675224665982848559,
    -0.092331884150846280604,
    0.16708131276325740451,
    0.14953397556537778935,
    -0.21648093400514297112,
    -0.29365404073655874425,
    0.14722311196992814158,
    0.57180165488865133529,
    0.57182680776660722348,
    0.31467894133703169906,
    0.10358846582242359622,
    0.019288531724146377059,
    0.0015763102184407604315,
];

pub const DB19: [f64; 38] = [
    8.6668488389976193503e-10,
    -1.1164020670358258164e-8,
    4.6369377757826042234e-8,
    1.4470882987978445421e-8,
    -6.8627556577691427019e-7,
    1.5319314766911930639e-6,
    3.0109643162965263397e-6,
    -0.000016640176297154944546,
    5.105950487073886053e-6,
    0.000087112704672199229654,
    -0.00012460079173415877534,
    -0.00026067613567862800573,
    0.00073580252050543520703,
    0.00034180865345859577657,
    -0.002687551800701582004,
    0.00076895435925754835597,
    0.007040747367105243153,
    -0.0058669222810121747266,
    -0.013988388678535141633,
    0.019375549889176127646,
    0.02162376740958504713,
    -0.045674226277230908056,
    -0.026501236250123040899,
    0.086906755555812232488,
    0.02758435062562866875,
    -0.14278569503873657498,
    -0.033518541902302878682,
    0.21234974330627848881,
    0.074652269708103266368,
    -0.28583863175582624185,
    -0.22809139421548264637,
    0.26089495265103882929,
    0.60170454912753789489,
    0.52443637746465491534,
    0.26438843174089678467,
    0.081278113265459550653,
    0.014281098450764397374,
    0.0011086697631817105711,
];

pub const DB20: [f64; 40] = [
    -2.9988364896193195664e-10,
    4.0561270555518327661e-9,
    -1.8148432482996959732e-8,
    2.0143220235505126943e-10,
    2.6339242262700010841e-7,
    -6.8470795970005568942e-7,
    -1.0119940100188861503e-6,
    7.2412482876736201028e-6,
    -4.3761438621839968104e-6,
    -0.000037105861833947128642,
    0.00006774280828377729558,
    0.00010153288973670290508,
    -0.00038510474869921760607,
    -0.000053497598439976950518,
    0.0013925596193231363239,
    -0.00083156217282255691925,
    -0.0035814942596096227776,
    0.0044205423870457909631,
    0.0067216273022594568353,
    -0.013810526137151920078,
    -0.0087893249239015613488,
    0.032294299530769581759,
    0.0058746818118118264913,
    -0.061722899624680459733,
    0.005632246857307435507,
    0.10229171917444255789,
    -0.024716827338613584016,
    -0.15545875070726795593,
    0.039850246457771202198,
    0.22829105081991632297,
    -0.016727088309077007575,
    -0.3267868004340349674,
    -0.13921208801148387258,
    0.36150229873933106292,
    0.61049323893859382016,
    0.47269618531090169637,
    0.21994211355139704501,
    0.063423780459081514976,
    0.010549394624950398325,
    0.00077995361366684632159,
];

/// Low-pass filter for the requested number of vanishing moments.
pub fn lowpass_filter(order: usize) -> Option<&'static [f64]> {
    match order {
        12 => Some(&DB12),
        13 => Some(&DB13),
        14 => Some(&DB14),
        15 => Some(&DB15),
        16 => Some(&DB16),
        17 => Some(&DB17),
        18 => Some(&DB18),
        19 => Some(&DB19),
        20 => Some(&DB20),
        _ => None,
    }
}
