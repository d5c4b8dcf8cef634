// Labels produced by scikit-learn 1.7 `HDBSCAN(min_cluster_size=2, min_samples=2,
// cluster_selection_epsilon=eps, allow_single_cluster=True)`; -1 is noise.
pub const CASES: &[(f64, &[[f64; 2]], &[i32])] = &[
    (0.0, &[[337.9156689906409, 107.16160061912883], [154.72601544084586, 399.7330483874166], [497.9010494327334, 71.1159076400259], [39.36276688099949, 90.41190684842732], [179.82344584467546, 84.80962485352417], [294.3796577698651, 308.40375691188905], [52.692839874187825, 282.86552551291527], [2.31482166419289, 232.55959970441114], [487.8110988142688, 399.7142192257485]], &[-1, -1, -1, 0, 0, -1, 0, 0, -1]),
    (50.0, &[[298.4111833520593, 162.67482754136125], [103.17195569276517, 221.36278354641763], [139.02069987100762, 437.47892006311196], [106.57867286698387, 137.12250212764027], [403.59099323392917, 134.1826629874892], [134.03143478381463, 35.44089211507839], [233.60440691267047, 132.10271997023426], [444.47101901574615, 143.15915627130738], [386.88346584926876, 243.6224305261427], [234.00952346730435, 482.465104140239], [449.1136671557723, 39.51715854877591], [122.60213532913289, 92.39353933831451]], &[2, 1, 0, 1, 3, 1, 2, 3, -1, 0, 3, 1]),
    (0.0, &[[439.9124710461908, 269.81084770031765], [395.2907350706302, 277.4458044982222], [423.61588867318727, 267.6059612067338], [412.45192897890183, 291.5618778193013], [217.6453720094845, 394.20848579392265], [185.667579172993, 382.75367880521264], [207.7073520921811, 380.38082434339555], [189.5133233957915, 372.0779815685188], [180.02889908178454, 312.5875489683711], [182.74236057195213, 339.84677930209955], [177.49940165125014, 335.9651518604801], [195.77280128595493, 324.757866067129]], &[0, 0, 0, 0, 4, 3, 4, 3, 1, 2, 2, 1]),
    (50.0, &[[161.04889324048648, 203.49935525603962], [429.58717642493616, 6.738226913438449], [358.1178025343196, 228.47675047381856], [294.5375063779181, 73.19720958811754], [400.97950128428226, 189.6514550961204], [204.9078393368957, 282.9105553425184], [130.3580262685931, 218.1792255946099], [67.40942938371569, 351.4455791616177], [50.28051549296714, 139.75887436013096]], &[0, 2, 1, 2, 1, 0, 0, 0, 0]),
    (0.0, &[[109.26030569025002, 65.81332034345499], [274.5455707014071, 98.47857821052064], [375.5847786882125, 139.9363551677102], [484.00404851554157, 282.5563596435082], [43.988034244843824, 310.11579820884924], [104.50963061475716, 188.87379364349803], [103.77013037425637, 142.06266606199503], [306.6248073628409, 252.732417836136], [9.809505807260255, 458.36687538191933], [123.41259147550548, 242.89252113588887], [64.12982188892991, 191.7630522338759], [391.1640975868603, 119.57394657844605]], &[0, 1, 1, -1, 0, 0, 0, 1, 0, 0, 0, 1]),
    (50.0, &[[390.60928455028693, 298.29214544913566], [393.89616634549225, 296.0100987749415], [361.0770810968724, 283.4111197099725], [393.0037420520737, 281.97677759650566], [291.52487593537467, 413.7301766431508], [302.81830997408065, 425.43693681296014], [311.17905728954014, 405.5028238658325], [305.2150586097724, 369.1470435315414], [241.9109874444875, 103.29096520390883], [218.0634176023554, 100.66580516901345], [257.64666509644496, 121.02670208998768], [259.9159600524556, 133.76634533608689]], &[1, 1, 1, 1, 2, 2, 2, 2, 0, 0, 0, 0]),
    (0.0, &[[474.0762913675157, 436.8074578846948], [70.41923014506635, 390.09399207505567], [3.2671458153188393, 331.9736764447817], [156.31853477913265, 178.90665264315015], [112.78392886359524, 281.05153227359693], [465.19610480136186, 414.60734929302674], [407.6429977210277, 255.60895419533387], [486.98084344395977, 419.6603287453873], [313.389074041185, 444.5719443320275]], &[0, 1, 1, 1, 1, 0, 0, 0, 0]),
    (50.0, &[[43.76158464878893, 108.8442167996469], [453.7434540083325, 90.09539775651115], [41.65321188364418, 194.99058975444933], [358.70763246008215, 297.6476798175611], [266.16370813458616, 371.3441974258681], [416.7283777037823, 10.509219566243399], [448.5747571412141, 301.1210321024992], [438.30995763024833, 244.90089961266497], [166.49424326664158, 66.74297029358029], [368.74639428283064, 59.8981170117916], [417.0194245508313, 89.01015422716446], [35.17313251345461, 337.3503300187333]], &[0, 1, 0, 2, 2, 1, 2, 2, 0, 1, 1, 0]),
    (0.0, &[[259.87585495651285, 92.83043287423851], [253.56829328667982, 107.16616309581097], [274.24053090603365, 102.83217263818794], [240.87602157540647, 105.40485249423918], [44.708368782829325, 154.968629697717], [68.08537192373096, 149.01675244055275], [39.972144982381195, 159.34420629909937], [64.69656155883757, 174.0114997033402], [384.081210340362, 196.74598246856038], [409.83424099261657, 184.6679481855997], [394.7876532667891, 194.16410929727996], [374.6169378395531, 197.83025825120663]], &[1, 1, 1, 1, 0, 0, 0, 0, 2, 2, 2, 2]),
    (50.0, &[[60.420324960485495, 306.3092095780959], [373.42126983162433, 481.24454189599845], [331.36188914568703, 288.07551334335255], [325.0107543838412, 196.77169688687545], [270.708567401152, 221.89996511809596], [276.6546077625123, 321.70481966610663], [327.28285406132915, 422.573661684023], [83.88156227287553, 113.26481557086903], [161.41832776045567, 466.9632829513555]], &[-1, -1, -1, -1, -1, -1, -1, -1, -1]),
    (0.0, &[[323.61249506809327, 63.40752691783963], [154.57568233077635, 350.6779228059622], [100.355205463313, 374.87565646566117], [468.8718428344076, 464.69443860278955], [244.30390575919515, 170.73069771799587], [88.7583053771387, 72.69770090791394], [30.557190096634546, 412.7187718861045], [169.6914408927395, 123.7046929137336], [439.28210953132054, 69.20127651220359], [68.03477789095675, 131.30891695071563], [416.58777103576625, 61.46620775535633], [100.61819148904422, 463.23248148265264]], &[1, 0, 0, -1, 2, 3, 0, 2, 1, 3, 1, 0]),
    (50.0, &[[402.70710798169154, 309.1471277067017], [402.9706193216523, 322.4598455510609], [409.35356767936383, 342.65030026244597], [389.82264933140823, 347.07227920544204], [107.31639331693528, 336.4296286901484], [98.0745782297482, 332.28919229074705], [107.85079338642609, 332.0842915808389], [101.69746355690067, 329.1655555958963], [478.1445800446515, 323.1144129751047], [458.9172728914472, 327.3585125835815], [403.76754559903685, 373.02123687963433], [447.60182177295405, 317.9230237810056]], &[0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0]),
    (0.0, &[[171.66594635121646, 484.57341236015867], [425.869546357891, 218.69832199245943], [344.9030419213655, 204.49136711597345], [388.0380494865542, 349.60618944459134], [5.6199567644261155, 298.4705076738687], [129.76877073292408, 461.71709268424667], [311.1563571926514, 451.0131253106642], [406.92911162885065, 207.206711521019], [447.53685034926883, 491.6409044009294]], &[0, 2, 2, 1, -1, 0, 1, 2, -1]),
    (50.0, &[[115.010327897982, 214.49794270118966], [41.29377396947342, 249.57461851905538], [226.17031582533332, 242.21378141638522], [67.81952711914535, 255.24836793208578], [187.6719222995209, 213.48636239791713], [383.5019573726555, 251.73380361818204], [10.922815656432883, 201.02442553555693], [446.95772043171684, 147.80264809223243], [77.56787194639358, 4.401845454017284], [284.69412530615256, 108.1940044667702], [165.18945385153472, 390.1844089027198], [444.6544147400912, 116.91672677984272]], &[1, 1, 2, 1, 2, 0, 1, 0, -1, -1, -1, 0]),
    (0.0, &[[145.0254097109663, 175.99305176916235], [93.96678186534766, 169.61651077092245], [98.89099180115144, 179.48008913492615], [94.02654256950959, 144.2944237499723], [438.3196512386029, 32.50844834428999], [391.50948310718985, 37.602960404792384], [439.5151374452685, 36.12065721778636], [416.383036720036, 56.499772314939996], [346.07677973517815, 446.5260525275307], [358.96810800946514, 422.78792494582217], [335.4212344007205, 444.0260860217306], [335.8903106781632, 411.36777931956016]], &[1, 1, 1, 1, 2, 2, 2, 2, 0, 0, 0, 0]),
    (50.0, &[[387.9278874193661, 17.271083321825476], [99.5109951233768, 327.4245471620857], [86.64936512708121, 426.01731001687233], [395.6451604974476, 399.93920329150967], [318.4771582675682, 21.97695070020844], [481.63897277295973, 63.574171655149726], [17.2432120466261, 259.22086846567095], [458.2539938891278, 167.5770520921679], [388.7331670312294, 238.71102303696944]], &[0, 1, 1, 0, 0, 0, 1, 0, 0]),
    (0.0, &[[42.852895567787044, 319.5158174763126], [482.461858303871, 345.9828790599877], [334.3633566125289, 296.748959960574], [49.68370059246868, 204.8704749359106], [105.81892257995395, 292.37636079800717], [259.3423688982461, 25.484943503071676], [226.30549308549325, 372.3866914396685], [174.4757055180427, 313.9033035348771], [172.9288572649962, 36.5584648505598], [61.46823567258475, 8.873626005703573], [19.324936736652866, 344.5834881536441], [99.1861602291056, 431.9151222513473]], &[0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0]),
    (50.0, &[[374.79853240436506, 342.9620366256279], [366.17079331282247, 340.9498689972055], [343.6419286957916, 338.29659755134514], [389.3008478822945, 340.321017743116], [318.31100766082704, 439.2258085195074], [323.09793918535496, 429.30128979041774], [352.0841557657135, 435.1070998958252], [305.39723423133995, 431.5017120820636], [259.6448631123944, 154.31575290534352], [284.7034647421075, 160.55212094113602], [264.1526855075321, 151.00963064058496], [270.71567463760994, 155.41665457547745]], &[1, 1, 1, 1, 2, 2, 2, 2, 0, 0, 0, 0]),
    (0.0, &[[341.69217344511884, 195.23827878723992], [384.576635028472, 306.3100255515976], [204.17502535418208, 247.56547118020268], [33.59097594847421, 374.6454412367616], [163.18745773801407, 483.34661512907763], [440.0139821883798, 63.39567683896769], [484.6280723033159, 183.59264018151194], [354.010556789424, 458.86783269655194], [104.83512556615653, 132.5219125393205]], &[0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (50.0, &[[449.7347802406629, 282.8137123843418], [195.97894745341165, 251.6897341617031], [339.85683047538265, 140.03438048636585], [2.000874993514312, 134.61274713540945], [445.35255658732297, 177.8816686796502], [122.08607354870293, 187.01482678377857], [265.05126383809244, 487.39054428808254], [318.2017148045527, 42.47019325532414], [436.0224394265684, 321.7668844818654], [258.1619758422462, 31.831018228192566], [108.4869331355881, 323.21321726660915], [123.05862488745095, 407.0968462055245]], &[0, -1, -1, -1, -1, -1, -1, -1, 0, -1, -1, -1]),
    (0.0, &[[131.9859383733985, 357.00269261203164], [109.43113156394739, 332.50761199075026], [158.73318166684416, 355.3552158613157], [138.2631064922626, 327.43635364988063], [351.9365795390849, 182.77472427021826], [314.64269492972886, 156.15263288059802], [346.1335466278499, 154.9426872265916], [345.66691856804266, 166.64794826268053], [277.4266489066448, 435.0520801872792], [295.3058275432143, 394.8346751227407], [245.40543675655886, 419.71427852056047], [292.7870515558386, 428.96939397041876]], &[1, 1, 1, 1, 0, 0, 0, 0, 2, 2, 2, 2]),
    (50.0, &[[311.0957284635798, 472.2788097391784], [251.3419264170264, 369.18336732700243], [409.16191171902375, 418.7853629051968], [238.21369042728202, 367.86932429985046], [75.8686854535685, 25.414589973787262], [446.83249297897635, 37.35807758185516], [31.659379073018247, 391.9815362399842], [82.31843327606437, 36.47742941883519], [160.5880376081375, 336.6289817398397]], &[1, 2, 1, 2, 0, -1, -1, 0, 2]),
    (0.0, &[[61.087153947002314, 431.5939056170237], [486.1965711786968, 323.84829973589177], [364.07060446162967, 86.88452332323997], [317.89984933960636, 487.0776185099528], [463.266071652694, 171.55048733935513], [347.87277115346643, 83.7116410405424], [307.0198037199398, 307.39438545636324], [100.453650975309, 162.95548842906732], [432.2880045676273, 112.04255277789893], [141.39530033799653, 231.03413387437865], [98.70819897502808, 241.66297756529926], [175.69147599828773, 215.3031929357384]], &[-1, -1, 2, -1, 1, 2, 0, 0, 1, 0, 0, 0]),
    (50.0, &[[271.67008767310983, 419.83170883211653], [316.0209487800035, 395.9872856323576], [285.88495171824223, 402.54430802327437], [293.1481663909225, 407.0864392579587], [202.50750153776895, 256.0732302149009], [188.90341783406328, 264.26242269237326], [193.08814475639358, 230.33752688656855], [197.31374468567344, 282.22635616512224], [85.39717938477901, 380.7016615650727], [85.9770769807802, 380.94977178358334], [86.49619387566024, 412.28221998704015], [98.0352850367662, 377.2805333272675]], &[0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2]),
];
