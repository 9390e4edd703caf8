// Generated by gen_oracle.py; do not edit.

/// (y, erf, erfc, erfcx, ierfc, exp(y^2) ierfc)
pub const SPECIAL: &[(f64, f64, f64, f64, f64, f64)] = &[
    (-2.6e+1, -1.0, 2.0, 7.6577249314905683515e+293, 5.2e+1, 1.9910084821875477714e+295),
    (-6.0, -9.9999999999999997848e-1, 1.9999999999999999785, 8.6224630942303903615e+15, 1.2000000000000000002e+1, 5.1734778565382342733e+16),
    (-2.5, -9.9959304798255504106e-1, 1.9995930479825550411, 1.0358148429726229083e+3, 5.0000717620715639575, 2.590101297015105027e+3),
    (-1.3, -9.340079449406524366e-1, 1.9340079449406524366, 1.0481318741176322117e+1, 2.6183143218208830067, 1.418990394707697504e+1),
    (-5.0e-1, -5.2049987781304653768e-1, 1.5204998778130465377, 1.9523604891825570933, 1.1996412283742456659, 1.5403698281390348336),
    (-1.0e-3, -1.1283787909692363799e-3, 1.0011283787909692364, 1.0011293799198485917, 5.6519014773724580313e-1, 5.6519071292767613554e-1),
    (0.0, 0.0, 1.0, 1.0, 5.6418958354775628695e-1, 5.6418958354775628695e-1),
    (1.0e-8, 1.1283791670955125363e-8, 9.9999998871620832904e-1, 9.9999998871620842904e-1, 5.6418957354775634337e-1, 5.6418957354775639979e-1),
    (3.0e-1, 3.2862675945912742764e-1, 6.7137324054087257236e-1, 7.3459933456765514229e-1, 3.1421848264721975344e-1, 3.4380978317745974426e-1),
    (8.4e-1, 7.6514271145499453466e-1, 2.3485728854500546534e-1, 4.7560041951241154648e-1, 8.1323575981431115819e-2, 1.6468523115733058791e-1),
    (1.249, 9.2266331131506597297e-1, 7.7336688684934027033e-2, 3.6803184517413749421e-1, 2.1962939775115299555e-2, 1.0451780892525855668e-1),
    (1.251, 9.2313635389503205031e-1, 7.6863646104967949687e-2, 3.6761420132177170757e-1, 2.1808739834527278179e-2, 1.0430421769421988077e-1),
    (1.5, 9.6610514647531072707e-1, 3.3894853524689272933e-2, 3.2158541645431750235e-1, 8.622864324780776366e-3, 8.1811458866280033417e-2),
    (3.0, 9.9997790950300141456e-1, 2.2090496998585441373e-5, 1.7900115118138995042e-1, 3.3550349776176028269e-6, 2.718613000358643569e-2),
    (5.5, 9.9999999999999264215e-1, 7.3578479179743980631e-15, 1.0096221839949908823e-1, 6.4841667745542065598e-16, 8.8973823505113016677e-3),
    (6.49, 9.9999999999999999996e-1, 4.3817001500585228628e-20, 8.5934916966147375577e-2, 3.2999674173844341563e-21, 6.4719724374598194534e-3),
    (6.51, 9.9999999999999999997e-1, 3.3683693104298066027e-20, 8.5676807286035568208e-2, 2.5293465155647685033e-21, 6.433568115664737911e-3),
    (1.0e+1, 1.0, 2.088487583762544757e-45, 5.6140992743822585858e-2, 1.0340531914663688043e-46, 2.7796561095304283729e-3),
    (2.6e+1, 1.0, 5.6631924088561428465e-296, 2.1683584850562906616e-2, 1.0874703305376300182e-297, 4.1637743312071492758e-4),
    (2.79e+1, 1.0, 1.7634968411251355476e-340, 2.0208884621282615627e-2, 3.1563415256147245844e-342, 3.6170261397131094266e-4),
    (2.81e+1, 1.0, 2.3942986267040136905e-345, 2.0065231377197209928e-2, 4.2549393732710251723e-347, 3.5658184851468797271e-4),
    (5.0e+1, 1.0, 2.0709207788416560484e-1088, 1.12815362653237725e-2, 2.0700932376747797394e-1090, 1.1277028156766193889e-4),
    (1.0e+3, 1.0, 1.8600370486323233709e-434298, 5.641893014533876542e-4, 9.30017594299962407e-434302, 2.8209436863274833442e-7),
    (1.0e+6, 1.0, 3.1593476125994294337e-434294481910, 5.6418958354747419216e-7, 1.579673806298135043e-434294481916, 2.8209479177345500129e-13),
];

pub const JC: [f64; 9] = [1.3, -4.0e-1, 7.0e-1, -1.1, -6.0e-1, 9.0e-1, 4.5e-1, 2.5e-1, -8.0e-1];
pub const M: f64 = 1.5;

/// (w, t, eps, W0, W12, W1, W32, U0, U12)
pub const LAYER: &[(f64, f64, f64, [f64; 6])] = &[
    (-6.0, 1.0e-4, 4.0e-2, [-4.0e-1, 6.6, 1.620009e+1, 1.7010288e+2, -4.893731551508039233e-20, -3.1081816282998677653e-19]),
    (-1.3, 1.0e-4, 4.0e-2, [-4.0e-1, 1.43, 7.6059e-1, 1.173224, -9.9659941815836700971e-5, -1.3702069529773830658e-4]),
    (-2.0e-1, 1.0e-4, 4.0e-2, [-4.0e-1, 2.2e-1, 1.809e-2, -8.3504e-2, -3.8146096665749521237e-1, -8.0174119639248846695e-2]),
    (0.0, 1.0e-4, 4.0e-2, [4.5e-1, 1.0155412503859613165e-2, 1.5e-5, -2.5364835297140027149e-3, -7.8259018954652931143e-1, -8.9124751439915960234e-3]),
    (4.0e-1, 1.0e-4, 4.0e-2, [1.3, 2.8e-1, -4.806e-2, 1.606e-2, -4.569393039991971996e-176, -2.4041092997667552096e-179]),
    (2.2, 1.0e-4, 4.0e-2, [1.3, 1.54, -1.45206, 2.66233, -4.7413972789788755895e-5258, -4.5604258467928453478e-5262]),
    (7.0, 1.0e-4, 4.0e-2, [1.3, 4.9, -1.470006e+1, 8.575105e+1, -1.1551755060267314517e-53204, -3.4938713879950418165e-53209]),
    (-6.0, 5.0e-2, 4.0e-2, [-4.0e-1, 6.6, 1.6245e+1, 1.7154e+2, -8.103086333633976566e-19, -4.504362697225945797e-18]),
    (-1.3, 5.0e-2, 4.0e-2, [-3.9996650865468363792e-1, 1.4300024730667154948, 8.0549986201845203389e-1, 1.484599419131353969, -1.582529272246370573e-3, -9.7016349469443249429e-4]),
    (-2.0e-1, 5.0e-2, 4.0e-2, [4.8025868335707372363e-2, 3.1104289085242333999e-1, 5.082106043857760014e-2, -5.1149155190854717292e-2, -2.5893634886516578786e-1, -3.5126612749094236495e-2]),
    (0.0, 5.0e-2, 4.0e-2, [4.5e-1, 2.2708192698181440434e-1, 7.5e-3, -3.0277590264241920579e-2, -2.5060759577420784843e-1, -2.8070012690531701174e-2]),
    (4.0e-1, 5.0e-2, 4.0e-2, [1.1249822708777419375, 3.0790933115693662682e-1, -7.4930184790370209553e-2, 4.0559659328349100441e-2, -7.8531109471252332589e-2, -6.411312546662201269e-3]),
    (2.2, 5.0e-2, 4.0e-2, [1.2999999999970456703, 1.5400000000001368405, -1.4819999999999950991, 2.8269999999999666597, -2.2220605726805263268e-12, -7.8019219910482897501e-14]),
    (7.0, 5.0e-2, 4.0e-2, [1.3, 4.9, -1.473e+1, 8.6275e+1, -1.094432881578308422e-108, -1.4903023667156509784e-110]),
    (-6.0, 6.0e-1, 4.0e-2, [-3.9999996327606400847e-1, 6.600000007328427006, 1.6739999998878983755e+1, 1.873799999990111546e+2, -6.8215659414255366329e-8, -2.3948396342238133491e-8]),
    (-1.3, 6.0e-1, 4.0e-2, [-1.9996672346685204413e-1, 1.5436671497979342275, 1.2561697362112340829, 4.9666361421720703924, -4.6801425268561517851e-2, -7.4378044245833917896e-3]),
    (-2.0e-1, 6.0e-1, 4.0e-2, [3.268623194970000014e-1, 8.3970915394629429866e-1, 2.2483296623240687709e-1, 1.111778757583312369, -8.179780408075429392e-2, -1.1469870640277819136e-2]),
    (0.0, 6.0e-1, 4.0e-2, [4.5e-1, 7.8663487002629693079e-1, 9.0e-2, 9.0463010053024147041e-1, -8.1375864804243100507e-2, -1.117074659762738478e-2]),
    (4.0e-1, 6.0e-1, 4.0e-2, [6.9224944351512418836e-1, 7.5850217989132741899e-1, -1.6600006870558110092e-1, 7.9075754535015194835e-1, -7.2972414814394180789e-2, -9.6122634263633280634e-3]),
    (2.2, 6.0e-1, 4.0e-2, [1.2620817396788013219, 1.55637259126540008, -1.8069338355487272437, 4.6452246934452900026, -8.7467103780747603322e-3, -9.7413811831748996026e-4]),
    (7.0, 6.0e-1, 4.0e-2, [1.2999999998590860682, 4.9000000000244555758, -1.5059999999996727269e+1, 9.2049999999996051153e+1, -6.2801717729125055075e-11, -4.9414996974091105714e-12]),
    (-6.0, 1.4, 4.0e-2, [-3.9971423552096417829e-1, 6.6001248533094716555, 1.7459959130093693712e+1, 2.1042003333360393334e+2, -1.2070012989851464695e-4, -2.329617201693722349e-5]),
    (-1.3, 1.4, 4.0e-2, [-2.8364190318726552223e-2, 1.8070366572019191828, 1.7656486597114272591, 1.0582164476567253813e+1, -4.22989076010149873e-2, -6.2769696267358993175e-3]),
    (-2.0e-1, 1.4, 4.0e-2, [3.6913196003288092771e-1, 1.2501772990004394686, 4.1374392232706606463e-1, 4.1261098169029042285, -5.3827715068145267749e-2, -7.5760363301325918348e-3]),
    (0.0, 1.4, 4.0e-2, [4.5e-1, 1.2016046120624181784, 2.1e-1, 3.6248405797216281715, -5.370364204166995701e-2, -7.4883360770508989979e-3]),
    (4.0e-1, 1.4, 4.0e-2, [6.1059039006617861907e-1, 1.1557736182333030833, -1.8233863390494763156e-1, 3.1027467166572349749, -5.1227117798700462517e-2, -7.0126426723675409806e-3]),
    (2.2, 1.4, 4.0e-2, [1.1396955741455011569, 1.6728839850492414272, -2.2157872053376197962, 7.4481312806717472777, -2.0505241844847298031e-2, -2.5937656039427524233e-3]),
    (7.0, 1.4, 4.0e-2, [1.2999755788468303261, 4.900009404017952673, -1.553999726107883864e+1, 1.0045000152736010924e+2, -6.3997913322013595824e-6, -6.7286900852163715981e-7]),
    (-6.0, 1.0e-4, 1.0e-3, [-4.0e-1, 6.6, 1.620009e+1, 1.7010288e+2, -5.3184949924224674836e-124, -3.3734662179706630602e-123]),
    (-1.3, 1.0e-4, 1.0e-3, [-4.0e-1, 1.43, 7.6059e-1, 1.173224, -3.5289888622284557384e-27, -4.8221010984398487283e-27]),
    (-2.0e-1, 1.0e-4, 1.0e-3, [-4.0e-1, 2.2e-1, 1.809e-2, -8.3504e-2, -1.6146781397383477403e-4, -3.2571259000803434844e-5]),
    (0.0, 1.0e-4, 1.0e-3, [4.5e-1, 1.0155412503859613165e-2, 1.5e-5, -2.5364835297140027149e-3, -5.3472265331043114424e-1, -4.7841865596669640144e-3]),
    (4.0e-1, 1.0e-4, 1.0e-3, [1.3, 2.8e-1, -4.806e-2, 1.606e-2, -4.4804827763765378994e-176, -2.3115715482169750852e-179]),
    (2.2, 1.0e-4, 1.0e-3, [1.3, 1.54, -1.45206, 2.66233, -4.7242595256438715797e-5258, -4.5275195082042083811e-5262]),
    (7.0, 1.0e-4, 1.0e-3, [1.3, 4.9, -1.470006e+1, 8.575105e+1, -1.1538592729134957228e-53204, -3.4859139641706183813e-53209]),
    (-6.0, 5.0e-2, 1.0e-3, [-4.0e-1, 6.6, 1.6245e+1, 1.7154e+2, -3.0632775037776993844e-75, -4.0758437579607427996e-75]),
    (-1.3, 5.0e-2, 1.0e-3, [-3.9996650865468363792e-1, 1.4300024730667154948, 8.0549986201845203389e-1, 1.484599419131353969, -1.321272880573303752e-5, -3.9970035589122383652e-7]),
    (-2.0e-1, 5.0e-2, 1.0e-3, [4.8025868335707372363e-2, 3.1104289085242333999e-1, 5.082106043857760014e-2, -5.1149155190854717292e-2, -3.8462593085624009823e-2, -8.8787271788053638157e-4]),
    (0.0, 5.0e-2, 1.0e-3, [4.5e-1, 2.2708192698181440434e-1, 7.5e-3, -3.0277590264241920579e-2, -4.5015131298690810443e-2, -9.9608639147901723082e-4]),
    (4.0e-1, 5.0e-2, 1.0e-3, [1.1249822708777419375, 3.0790933115693662682e-1, -7.4930184790370209553e-2, 4.0559659328349100441e-2, -1.8665743323244551099e-2, -3.8140136114235770184e-4]),
    (2.2, 5.0e-2, 1.0e-3, [1.2999999999970456703, 1.5400000000001368405, -1.4819999999999950991, 2.8269999999999666597, -9.5271524135459704324e-13, -1.4468602103398844004e-14]),
    (7.0, 5.0e-2, 1.0e-3, [1.3, 4.9, -1.473e+1, 8.6275e+1, -7.2293975818825536992e-109, -6.508834276867942741e-111]),
    (-6.0, 6.0e-1, 1.0e-3, [-3.9999996327606400847e-1, 6.600000007328427006, 1.6739999998878983755e+1, 1.873799999990111546e+2, -4.4610256375020911268e-9, -1.1120937687140434864e-10]),
    (-1.3, 6.0e-1, 1.0e-3, [-1.9996672346685204413e-1, 1.5436671497979342275, 1.2561697362112340829, 4.9666361421720703924, -6.6027802387637933947e-3, -1.5071500925686843088e-4]),
    (-2.0e-1, 6.0e-1, 1.0e-3, [3.268623194970000014e-1, 8.3970915394629429866e-1, 2.2483296623240687709e-1, 1.111778757583312369, -1.2876732410692766725e-2, -2.8823263209078787213e-4]),
    (0.0, 6.0e-1, 1.0e-3, [4.5e-1, 7.8663487002629693079e-1, 9.0e-2, 9.0463010053024147041e-1, -1.3047172489004056436e-2, -2.9102312803321362069e-4]),
    (4.0e-1, 6.0e-1, 1.0e-3, [6.9224944351512418836e-1, 7.5850217989132741899e-1, -1.6600006870558110092e-1, 7.9075754535015194835e-1, -1.2120608798813986438e-2, -2.6847185189222271099e-4]),
    (2.2, 6.0e-1, 1.0e-3, [1.2620817396788013219, 1.55637259126540008, -1.8069338355487272437, 4.6452246934452900026, -1.6719822998378612321e-3, -3.5908474473132398232e-5]),
    (7.0, 6.0e-1, 1.0e-3, [1.2999999998590860682, 4.9000000000244555758, -1.5059999999996727269e+1, 9.2049999999996051153e+1, -1.578821151156699937e-11, -3.1364575912133323878e-13]),
    (-6.0, 1.4, 1.0e-3, [-3.9971423552096417829e-1, 6.6001248533094716555, 1.7459959130093693712e+1, 2.1042003333360393334e+2, -1.444762406659101696e-5, -3.3764011118303149268e-7]),
    (-1.3, 1.4, 1.0e-3, [-2.8364190318726552223e-2, 1.8070366572019191828, 1.7656486597114272591, 1.0582164476567253813e+1, -6.3800837728473084853e-3, -1.4377719361238032427e-4]),
    (-2.0e-1, 1.4, 1.0e-3, [3.6913196003288092771e-1, 1.2501772990004394686, 4.1374392232706606463e-1, 4.1261098169029042285, -8.4951678955336306962e-3, -1.8985435576417703095e-4]),
    (0.0, 1.4, 1.0e-3, [4.5e-1, 1.2016046120624181784, 2.1e-1, 3.6248405797216281715, -8.543184866202637028e-3, -1.9064013857258993302e-4]),
    (4.0e-1, 1.4, 1.0e-3, [6.1059039006617861907e-1, 1.1557736182333030833, -1.8233863390494763156e-1, 3.1027467166572349749, -8.2776261377336725749e-3, -1.8415994557087318841e-4]),
    (2.2, 1.4, 1.0e-3, [1.1396955741455011569, 1.6728839850492414272, -2.2157872053376197962, 7.4481312806717472777, -3.5410548610458120891e-3, -7.7731453405129366885e-5]),
    (7.0, 1.4, 1.0e-3, [1.2999755788468303261, 4.900009404017952673, -1.553999726107883864e+1, 1.0045000152736010924e+2, -1.2860068450320997093e-6, -2.7261185154460604356e-8]),
];
