#pragma once

// Shared positive/negative snippet table for the 20 smell rules. Each entry
// pins the exact finding count the rule must produce on the snippet when it
// runs alone.

#include <string>
#include <vector>

namespace mlsmell::testing {

struct RuleFixture {
    const char* rule_id;
    const char* label;
    const char* code;
    int expected;
};

inline const std::vector<RuleFixture>& rule_fixtures() {
    static const std::vector<RuleFixture> fixtures = {
        // ---- CS2: NaN equivalence comparison --------------------------------
        {"CS2", "df column compared to np.nan",
         "import numpy as np\n"
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "x = df[df.a == np.nan]\n",
         1},
        {"CS2", "inequality against np.nan",
         "import numpy as np\n"
         "if x != np.nan:\n"
         "    pass\n",
         1},
        {"CS2", "math.nan via from-import",
         "from math import nan\n"
         "flag = y == nan\n",
         1},
        {"CS2", "legacy numpy.NaN alias",
         "import numpy\n"
         "r = numpy.NaN == v\n",
         1},
        {"CS2", "isnan is the sanctioned API",
         "import numpy as np\n"
         "np.isnan(x)\n",
         0},
        {"CS2", "assignment and ordering comparisons are fine",
         "import numpy as np\n"
         "x = np.nan\n"
         "y = q > 0\n",
         0},
        {"CS2", "local name nan without imports",
         "nan = 5\n"
         "x = y == nan\n",
         0},
        {"CS2", "identity test is not equivalence",
         "import numpy as np\n"
         "if x is np.nan:\n"
         "    pass\n",
         0},

        // ---- CS3: chain indexing -------------------------------------------
        {"CS3", "two-level chain on a read frame",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "x = df['a']['b']\n",
         1},
        {"CS3", "chained assignment target",
         "import pandas as pd\n"
         "df = pd.DataFrame(data)\n"
         "df['a']['b'] = 3\n",
         1},
        {"CS3", "three levels still one finding",
         "import pandas as pd\n"
         "df = pd.read_parquet('f')\n"
         "v = df['a']['b']['c']\n",
         1},
        {"CS3", "loc accessor is sanctioned",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "x = df.loc['a', 'b']\n",
         0},
        {"CS3", "chain on non-dataframe name",
         "import pandas as pd\n"
         "m = load()\n"
         "x = m['a']['b']\n",
         0},
        {"CS3", "single subscript",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "x = df['a']\n",
         0},

        // ---- CS4: reader without dtype --------------------------------------
        {"CS4", "read_csv without dtype",
         "import pandas as pd\n"
         "df = pd.read_csv('f.csv')\n",
         1},
        {"CS4", "read_table without dtype",
         "import pandas as pd\n"
         "t = pd.read_table('f.tsv')\n",
         1},
        {"CS4", "from-imported read_json",
         "from pandas import read_json\n"
         "d = read_json('f.json')\n",
         1},
        {"CS4", "dtype given",
         "import pandas as pd\n"
         "df = pd.read_csv('f.csv', dtype={'a': 'float64'})\n",
         0},
        {"CS4", "unrelated open call",
         "import pandas as pd\n"
         "f = open('f.csv')\n",
         0},
        {"CS4", "kwargs forwarding may carry dtype",
         "import pandas as pd\n"
         "df = pd.read_csv('f.csv', **opts)\n",
         0},
        {"CS4", "parquet reader carries its own schema",
         "import pandas as pd\n"
         "df = pd.read_parquet('f.parquet')\n",
         0},

        // ---- CS5: empty column misinitialization ----------------------------
        {"CS5", "zero-initialized column",
         "import pandas as pd\n"
         "df = pd.DataFrame()\n"
         "df['c'] = 0\n",
         1},
        {"CS5", "empty-string column",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "df['c'] = ''\n",
         1},
        {"CS5", "float zero column",
         "import pandas as pd\n"
         "df = pd.DataFrame()\n"
         "df['c'] = 0.0\n",
         1},
        {"CS5", "nan initialization is the fix",
         "import pandas as pd\n"
         "import numpy as np\n"
         "df = pd.DataFrame()\n"
         "df['c'] = np.nan\n",
         0},
        {"CS5", "plain name target",
         "import pandas as pd\n"
         "df = pd.DataFrame()\n"
         "c = 0\n",
         0},
        {"CS5", "dict subscript is not a column",
         "import pandas as pd\n"
         "d = {}\n"
         "d['c'] = 0\n",
         0},
        {"CS5", "False is not the zero literal",
         "import pandas as pd\n"
         "df = pd.DataFrame()\n"
         "df['c'] = False\n",
         0},

        // ---- CS6: merge parameters ------------------------------------------
        {"CS6", "merge with no keywords",
         "import pandas as pd\n"
         "df = pd.read_csv('a')\n"
         "m = df.merge(other)\n",
         1},
        {"CS6", "merge missing on=",
         "import pandas as pd\n"
         "df = pd.read_csv('a')\n"
         "m = df.merge(other, how='left')\n",
         1},
        {"CS6", "top-level pandas.merge",
         "import pandas as pd\n"
         "m = pd.merge(a, b)\n",
         1},
        {"CS6", "both keywords set",
         "import pandas as pd\n"
         "df = pd.read_csv('a')\n"
         "m = df.merge(other, how='inner', on='id')\n",
         0},
        {"CS6", "merge on a non-dataframe receiver",
         "import pandas as pd\n"
         "queue = Q()\n"
         "queue.merge(x)\n",
         0},
        {"CS6", "pandas.merge fully specified",
         "import pandas as pd\n"
         "m = pd.merge(a, b, how='outer', on='k')\n",
         0},

        // ---- CS7: in-place APIs misused --------------------------------------
        {"CS7", "dropna result discarded",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "df.dropna()\n",
         1},
        {"CS7", "sort_values result discarded",
         "import pandas as pd\n"
         "df = pd.DataFrame()\n"
         "df.sort_values('a')\n",
         1},
        {"CS7", "numpy.clip as a bare statement",
         "import numpy as np\n"
         "np.clip(x, 0, 1)\n",
         1},
        {"CS7", "result consumed",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "df = df.dropna()\n",
         0},
        {"CS7", "inplace=True requested",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "df.dropna(inplace=True)\n",
         0},
        {"CS7", "clip with out= writes in place",
         "import numpy as np\n"
         "np.clip(x, 0, 1, out=x)\n",
         0},

        // ---- CS8: .values conversion ------------------------------------------
        {"CS8", "values read into a variable",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "arr = df.values\n",
         1},
        {"CS8", "values iterated",
         "import pandas as pd\n"
         "df = pd.DataFrame(d)\n"
         "for v in df.values:\n"
         "    pass\n",
         1},
        {"CS8", "values passed as an argument",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "print(df.values)\n",
         1},
        {"CS8", "to_numpy is the sanctioned conversion",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "arr = df.to_numpy()\n",
         0},
        {"CS8", "dict values() call",
         "import pandas as pd\n"
         "d = {}\n"
         "x = list(d.values())\n",
         0},
        {"CS8", "values on untracked name",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "v = obj.values\n",
         0},

        // ---- CS9: numpy.dot with two arguments ---------------------------------
        {"CS9", "plain two-argument dot",
         "import numpy as np\n"
         "c = np.dot(A, B)\n",
         1},
        {"CS9", "two data args plus out keyword",
         "import numpy as np\n"
         "c = np.dot(A, B, out=C)\n",
         1},
        {"CS9", "from-imported dot",
         "from numpy import dot\n"
         "c = dot(A, B)\n",
         1},
        {"CS9", "matmul operator",
         "import numpy as np\n"
         "c = A @ B\n",
         0},
        {"CS9", "single-argument call",
         "import numpy as np\n"
         "c = np.dot(v)\n",
         0},
        {"CS9", "np.matmul call",
         "import numpy as np\n"
         "c = np.matmul(A, B)\n",
         0},

        // ---- CS11: hyperparameters not set --------------------------------------
        {"CS11", "bare KMeans",
         "from sklearn.cluster import KMeans\n"
         "m = KMeans()\n",
         1},
        {"CS11", "optimizer with positional params only",
         "import torch\n"
         "opt = torch.optim.Adam(model.parameters())\n",
         1},
        {"CS11", "bare SVC",
         "from sklearn.svm import SVC\n"
         "clf = SVC()\n",
         1},
        {"CS11", "keywords provided",
         "from sklearn.cluster import KMeans\n"
         "m = KMeans(n_clusters=8, random_state=0)\n",
         0},
        {"CS11", "uncataloged constructor",
         "import sklearn\n"
         "m = MyModel()\n",
         0},
        {"CS11", "optimizer with lr keyword",
         "import torch\n"
         "opt = torch.optim.SGD(params, lr=0.1)\n",
         0},
        {"CS11", "kwargs forwarding counts as configuration",
         "from sklearn.cluster import KMeans\n"
         "m = KMeans(**cfg)\n",
         0},

        // ---- CS13: deterministic option --------------------------------------
        {"CS13", "training file without the deterministic switch",
         "import torch\n"
         "loss = model(x)\n"
         "loss.backward()\n",
         1},
        {"CS13", "training loop without the switch",
         "import torch\n"
         "for e in rng:\n"
         "    out = net(x)\n"
         "    out.backward()\n",
         1},
        {"CS13", "at most one finding per file",
         "import torch\n"
         "loss.backward()\n"
         "loss2.backward()\n",
         1},
        {"CS13", "switch enabled",
         "import torch\n"
         "torch.use_deterministic_algorithms(True)\n"
         "loss.backward()\n",
         0},
        {"CS13", "no training indicator",
         "import torch\n"
         "out = net(x)\n",
         0},
        {"CS13", "no torch import",
         "import numpy as np\n"
         "loss.backward()\n",
         0},
        {"CS13", "switch via mode keyword",
         "import torch\n"
         "torch.use_deterministic_algorithms(mode=True)\n"
         "loss.backward()\n",
         0},

        // ---- CS14: randomness uncontrolled ------------------------------------
        {"CS14", "numpy randomness without seed",
         "import numpy as np\n"
         "x = np.random.rand(3)\n",
         1},
        {"CS14", "splitter without random_state",
         "from sklearn.model_selection import train_test_split\n"
         "tr, te = train_test_split(X, y)\n",
         1},
        {"CS14", "builtin random without seed",
         "import random\n"
         "v = random.random()\n",
         1},
        {"CS14", "torch randn without manual_seed",
         "import torch\n"
         "t = torch.randn(3)\n",
         1},
        {"CS14", "tensorflow random without set_seed",
         "import tensorflow as tf\n"
         "x = tf.random.uniform((2,))\n",
         1},
        {"CS14", "unseeded default_rng",
         "import numpy as np\n"
         "rng = np.random.default_rng()\n"
         "x = rng.normal()\n",
         1},
        {"CS14", "two domains, one finding each",
         "import random\n"
         "import numpy as np\n"
         "a = random.random()\n"
         "b = np.random.rand()\n",
         2},
        {"CS14", "estimator accepting random_state leaves it unset",
         "from sklearn.cluster import KMeans\n"
         "m = KMeans(n_clusters=3)\n",
         1},
        {"CS14", "numpy seed set",
         "import numpy as np\n"
         "np.random.seed(42)\n"
         "x = np.random.rand(3)\n",
         0},
        {"CS14", "random_state passed",
         "from sklearn.model_selection import train_test_split\n"
         "d = train_test_split(X, y, random_state=42)\n",
         0},
        {"CS14", "builtin seeded",
         "import random\n"
         "random.seed(0)\n"
         "v = random.random()\n",
         0},
        {"CS14", "seeded generator construction",
         "import numpy as np\n"
         "rng = np.random.default_rng(42)\n"
         "x = rng.normal()\n",
         0},
        {"CS14", "torch manual_seed set",
         "import torch\n"
         "torch.manual_seed(7)\n"
         "t = torch.randn(3)\n",
         0},
        {"CS14", "tensorflow seed set",
         "import tensorflow as tf\n"
         "tf.random.set_seed(1)\n"
         "x = tf.random.uniform((2,))\n",
         0},

        // ---- CS15: missing mask before log -------------------------------------
        {"CS15", "unclipped log",
         "import numpy as np\n"
         "y = np.log(x)\n",
         1},
        {"CS15", "unclipped log10",
         "import numpy as np\n"
         "y = np.log10(p)\n",
         1},
        {"CS15", "arithmetic is not a mask",
         "import numpy as np\n"
         "y = np.log(x + 1)\n",
         1},
        {"CS15", "clip mask applied",
         "import numpy as np\n"
         "y = np.log(np.clip(x, 1e-8, None))\n",
         0},
        {"CS15", "math.log is out of catalog scope",
         "import numpy as np\n"
         "import math\n"
         "y = math.log(x)\n",
         0},
        {"CS15", "log1p variant is safe",
         "import numpy as np\n"
         "y = np.log1p(x)\n",
         0},

        // ---- CS17: TensorArray not used ----------------------------------------
        {"CS17", "tensor grown with concat in a for loop",
         "import tensorflow as tf\n"
         "x = tf.constant([0.0])\n"
         "for i in r:\n"
         "    x = tf.concat([x, y], 0)\n",
         1},
        {"CS17", "tensor grown in a while loop",
         "import tensorflow as tf\n"
         "acc = tf.zeros([1])\n"
         "while cond:\n"
         "    acc = tf.concat([acc, nxt], axis=0)\n",
         1},
        {"CS17", "ones-initialized buffer grown in loop",
         "import tensorflow as tf\n"
         "buf = tf.ones([1])\n"
         "for b in batches:\n"
         "    buf = tf.concat([buf, b], 0)\n"
         "    use(buf)\n",
         1},
        {"CS17", "TensorArray is the sanctioned pattern",
         "import tensorflow as tf\n"
         "ta = tf.TensorArray(tf.float32, n)\n"
         "for i in r:\n"
         "    ta = ta.write(i, v)\n",
         0},
        {"CS17", "concat outside any loop",
         "import tensorflow as tf\n"
         "x = tf.concat([a, b], 0)\n",
         0},
        {"CS17", "concat of fresh inputs in loop",
         "import tensorflow as tf\n"
         "for i in r:\n"
         "    z = tf.concat([a, b], 0)\n",
         0},
        {"CS17", "loop-carried name not from an initializer",
         "import tensorflow as tf\n"
         "x = load()\n"
         "for i in r:\n"
         "    x = tf.concat([x, y], 0)\n",
         0},

        // ---- CS19: forward called directly --------------------------------------
        {"CS19", "submodule forward call",
         "import torch\n"
         "y = self.net.forward(x)\n",
         1},
        {"CS19", "model forward call",
         "import torch\n"
         "out = model.forward(batch)\n",
         1},
        {"CS19", "forward call in a chain",
         "import torch\n"
         "z = net.forward(a).detach()\n",
         1},
        {"CS19", "calling the module directly",
         "import torch\n"
         "y = self.net(x)\n",
         0},
        {"CS19", "super().forward override idiom",
         "import torch\n"
         "class M(torch.nn.Module):\n"
         "    def forward(self, x):\n"
         "        return super().forward(x)\n",
         0},
        {"CS19", "no torch import",
         "y = model.forward(x)\n",
         0},

        // ---- CSA1: unnecessary iteration ----------------------------------------
        {"CSA1", "iterrows loop",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "for i, row in df.iterrows():\n"
         "    pass\n",
         1},
        {"CSA1", "itertuples loop",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "for t in df.itertuples():\n"
         "    pass\n",
         1},
        {"CSA1", "direct iteration over the frame",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "for v in df:\n"
         "    pass\n",
         1},
        {"CSA1", "iteration over a column subscript",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "for v in df['a']:\n"
         "    pass\n",
         1},
        {"CSA1", "vectorized expression",
         "import pandas as pd\n"
         "df = pd.read_csv('f')\n"
         "x = df['a'] + 1\n",
         0},
        {"CSA1", "plain range loop",
         "import pandas as pd\n"
         "for i in range(10):\n"
         "    pass\n",
         0},
        {"CSA1", "iterrows on an untracked name",
         "import pandas as pd\n"
         "items = load()\n"
         "for x in items.iterrows():\n"
         "    pass\n",
         0},

        // ---- CSA12: memory not freed ----------------------------------------------
        {"CSA12", "model construction inside loop",
         "from tensorflow.keras import Sequential\n"
         "for i in r:\n"
         "    m = Sequential([layer])\n",
         1},
        {"CSA12", "tensor allocation inside loop",
         "import torch\n"
         "for i in r:\n"
         "    t = torch.zeros(1000)\n",
         1},
        {"CSA12", "torch.nn layer construction inside loop",
         "import torch.nn as nn\n"
         "for i in r:\n"
         "    layer = nn.Linear(10, 10)\n",
         1},
        {"CSA12", "clear_session in loop body",
         "import tensorflow as tf\n"
         "from tensorflow.keras import Sequential\n"
         "for i in r:\n"
         "    m = Sequential([layer])\n"
         "    tf.keras.backend.clear_session()\n",
         0},
        {"CSA12", "construction hoisted before loop",
         "from tensorflow.keras import Sequential\n"
         "m = Sequential([layer])\n"
         "for i in r:\n"
         "    m.fit(x)\n",
         0},
        {"CSA12", "del frees the loop allocation",
         "import torch\n"
         "for i in r:\n"
         "    t = torch.zeros(10)\n"
         "    del t\n",
         0},

        // ---- CSA16: broadcasting not used -------------------------------------------
        {"CSA16", "numpy tile",
         "import numpy as np\n"
         "b = np.tile(a, (3, 1))\n",
         1},
        {"CSA16", "tensorflow tile",
         "import tensorflow as tf\n"
         "b = tf.tile(a, [2, 1])\n",
         1},
        {"CSA16", "from-imported tile",
         "from numpy import tile\n"
         "b = tile(a, 2)\n",
         1},
        {"CSA16", "broadcasting addition",
         "import numpy as np\n"
         "c = a + b\n",
         0},
        {"CSA16", "repeat is a different API",
         "import numpy as np\n"
         "b = np.repeat(a, 3)\n",
         0},
        {"CSA16", "tile without any import",
         "b = tile(a, 2)\n",
         0},

        // ---- CSA18: train/eval toggling ----------------------------------------------
        {"CSA18", "eval never followed by train in a training file",
         "import torch\n"
         "model.eval()\n"
         "validate(model)\n"
         "loss.backward()\n",
         1},
        {"CSA18", "eval inside the training loop",
         "import torch\n"
         "for e in r:\n"
         "    model.eval()\n"
         "    loss.backward()\n",
         1},
        {"CSA18", "second eval left untoggled",
         "import torch\n"
         "model.eval()\n"
         "check()\n"
         "model.train()\n"
         "loss.backward()\n"
         "model.eval()\n",
         1},
        {"CSA18", "eval then train later",
         "import torch\n"
         "model.eval()\n"
         "validate(model)\n"
         "model.train()\n"
         "loss.backward()\n",
         0},
        {"CSA18", "inference-only file",
         "import torch\n"
         "model.eval()\n"
         "predict(model)\n",
         0},
        {"CSA18", "no torch import",
         "model.eval()\n"
         "loss.backward()\n",
         0},

        // ---- CSA20: gradients not cleared ----------------------------------------------
        {"CSA20", "backward without zero_grad in loop",
         "import torch\n"
         "for batch in dl:\n"
         "    loss.backward()\n"
         "    opt.step()\n",
         1},
        {"CSA20", "while-loop training without zero_grad",
         "import torch\n"
         "while step < n:\n"
         "    loss = f(batch)\n"
         "    loss.backward()\n",
         1},
        {"CSA20", "zero_grad only after backward",
         "import torch\n"
         "for b in dl:\n"
         "    loss.backward()\n"
         "    opt.zero_grad()\n",
         1},
        {"CSA20", "zero_grad precedes backward",
         "import torch\n"
         "for batch in dl:\n"
         "    opt.zero_grad()\n"
         "    loss.backward()\n",
         0},
        {"CSA20", "backward outside any loop",
         "import torch\n"
         "loss.backward()\n",
         0},
        {"CSA20", "zero_grad on the same line",
         "import torch\n"
         "for b in dl:\n"
         "    opt.zero_grad(); loss.backward()\n",
         0},

        // ---- CSA21: data leakage ------------------------------------------------------
        {"CSA21", "scaler fit_transform without a pipeline",
         "from sklearn.preprocessing import StandardScaler\n"
         "X2 = StandardScaler().fit_transform(X)\n",
         1},
        {"CSA21", "named transformer instance fit",
         "from sklearn.preprocessing import StandardScaler\n"
         "scaler = StandardScaler()\n"
         "scaler.fit(X_train)\n",
         1},
        {"CSA21", "PCA fit_transform without a pipeline",
         "from sklearn.decomposition import PCA\n"
         "p = PCA(n_components=2)\n"
         "Z = p.fit_transform(X)\n",
         1},
        {"CSA21", "transformers pipeline does not mask sklearn leakage",
         "from transformers import pipeline\n"
         "from sklearn.preprocessing import StandardScaler\n"
         "ner = pipeline('ner')\n"
         "X2 = StandardScaler().fit_transform(X)\n",
         1},
        {"CSA21", "make_pipeline suppresses the file",
         "from sklearn.preprocessing import StandardScaler\n"
         "from sklearn.svm import SVC\n"
         "from sklearn.pipeline import make_pipeline\n"
         "pipe = make_pipeline(StandardScaler(), SVC())\n"
         "pipe.fit(X)\n",
         0},
        {"CSA21", "transformers pipeline alone",
         "from transformers import pipeline\n"
         "ner = pipeline('ner')\n",
         0},
        {"CSA21", "construction without fit",
         "from sklearn.preprocessing import StandardScaler\n"
         "scaler = StandardScaler()\n",
         0},
        {"CSA21", "Pipeline construction suppresses the file",
         "import sklearn.pipeline\n"
         "from sklearn.preprocessing import StandardScaler\n"
         "pipe = sklearn.pipeline.Pipeline([('s', StandardScaler())])\n"
         "scaler = StandardScaler()\n"
         "scaler.fit(X)\n",
         0},
    };
    return fixtures;
}

} // namespace mlsmell::testing
