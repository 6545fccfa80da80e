package cycle;

import java.net.URL;
import java.net.URLConnection;

class Cycle {
    String a = b + "/x";
    String b = a + "/y";

    void m() throws Exception {
        URL u = new URL("http://cycle.example/" + a);
    }
}
