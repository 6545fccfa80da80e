package sock;

import java.io.OutputStream;
import java.net.Socket;

class Raw {
    void connect() throws Exception {
        Socket socket = new Socket("sockets.example", 4444);
        OutputStream out = socket.getOutputStream();
        out.write(1);
    }
}
