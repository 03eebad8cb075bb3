#pragma once

// Generated by tests/oracles/fixture_goldens.py; do not edit.

namespace qre::harness {

struct StrictnessGolden {
    const char* check;
    int index;
    double gap;
};

inline constexpr StrictnessGolden kStrictnessGoldens[] = {
    {"clA", 0, 8.5394912477025633e-2},
    {"clA", 1, 5.0993407583571949e-1},
    {"clA", 2, 2.234461825646411},
    {"clA", 3, 5.2431857423200417e-1},
    {"clA", 4, 2.3729910788187344e-1},
    {"clA", 5, 1.251842084475534},
    {"clA", 6, 2.7047860039911452e-1},
    {"clA", 7, 2.0450920150835958},
    {"clA", 8, 5.9229987050399365e-1},
    {"clA", 9, 1.175992584594389e-1},
    {"clB", 0, 2.1385330065922955e-2},
    {"clB", 1, 1.297845883903374e-1},
    {"clB", 2, 6.1505801636803648e-1},
    {"clB", 3, 3.55500994358743e-2},
    {"clB", 4, 2.3734173444754036e-1},
    {"clB", 5, 1.2549492603695933},
    {"clB", 6, 5.0057013372926571e-2},
    {"clB", 7, 3.4374249087843794e-1},
    {"clB", 8, 1.7787310335441751},
    {"clB", 9, 1.4507342272678366e-2},
    {"HPhard", 0, 4.1111485297771131e-4},
    {"HPhard", 1, 1.4260337415126037e-2},
    {"HPhard", 2, 2.6327882173254446e-1},
    {"HPhard", 3, 3.9804998480966102e-1},
    {"HPhard", 4, 5.1065885815479081e-3},
    {"HPhard", 5, 8.4501736186108398e-2},
    {"HPhard", 6, 9.9104953300293797e-2},
    {"HPhard", 7, 1.7827728198530493},
    {"HPhard", 8, 6.8022625798435293e-3},
    {"HPhard", 9, 4.6280162062131134e-3},
    {"secA", 0, 2.1383533277813404e-2},
    {"secA", 1, 1.299958611493547e-1},
    {"secA", 2, 6.2016399300261492e-1},
    {"secA", 3, 3.5495885384160629e-2},
    {"secA", 4, 2.3657880063156122e-1},
    {"secA", 5, 1.2541382750963913},
    {"secA", 6, 6.6852585792553843e-2},
    {"secA", 7, 4.6192282128140308e-1},
    {"secA", 8, 2.4326107617293893},
    {"secA", 9, 1.4523238285247308e-2},
    {"secAA", 0, 8.3506053609577626e-4},
    {"secAA", 1, 3.0162826818012366e-2},
    {"secAA", 2, 5.7840248944334431e-1},
    {"secAA", 3, 1.0804124143983645e-3},
    {"secAA", 4, 2.9055652210699335e-2},
    {"secAA", 5, 3.3476333982903561e-1},
    {"secAA", 6, 4.9622405221238828e-4},
    {"secAA", 7, 9.8406317193008017e-3},
    {"secAA", 8, 8.0404784356276e-2},
    {"secAA", 9, 1.0933448791845252e-3},
    {"FrSo", 0, 1.520854900644073e-4},
    {"FrSo", 1, 3.2548507521726187e-3},
    {"FrSo", 2, 4.1139703918678471e-2},
    {"FrSo", 3, 3.1604377522746264e-2},
    {"FrSo", 4, 3.3254773238856429e-1},
    {"FrSo", 5, 4.7164764114630481e-3},
    {"FrSo", 6, 2.5537952830200442e-3},
    {"FrSo", 7, 2.8356229068845449e-2},
    {"FrSo", 8, 1.9222097766191524e-1},
    {"FrSo", 9, 6.7399969442868097e-2},
};

}  // namespace qre::harness
